#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/initial_states.hpp"

namespace qwalk {

/// Coin and spin vector entering the limit density. Throws DegenerateTheta
/// when sin(theta) vanishes (theta = 0), where the support collapses.
class DensityParams {
 public:
  DensityParams(const CoinOperator& coin, const SpinVector& phi);

  const CoinOperator& coin() const noexcept { return coin_; }
  const SpinVector& phi() const noexcept { return phi_; }
  int xi() const noexcept { return coin_.xi(); }
  double c() const noexcept { return coin_.c(); }
  double s() const noexcept { return coin_.s(); }
  /// Half-width |c| of the support (-|c|, |c|).
  double support() const noexcept { return std::abs(coin_.c()); }

 private:
  CoinOperator coin_;
  SpinVector phi_;
};

/// A support point with gap = c^2 - x^2 carried separately: next to the
/// endpoints the difference cancels, so quadrature supplies it from the
/// angle instead.
struct SupportPoint {
  double x;
  double gap;

  /// gap = (|c| - x)(|c| + x).
  static SupportPoint at(double x, double c);
  /// x = |c| sin u, gap = c^2 cos^2 u.
  static SupportPoint from_angle(double u, double c);
};

/// Width of the band past |x| = |c| in which kappa clamps instead of throwing.
inline constexpr double kKappaClampBand = 1e-12;

/// kappa(x) = arccos(|s| x / (c sqrt(1 - x^2))), the inverse of h on [0, pi].
double kappa(double x, const CoinOperator& coin);
double kappa(const SupportPoint& pt, const CoinOperator& coin);

/// |s| (1 - lambda x) / (pi (1 - x^2) sqrt(c^2 - x^2)) with
/// lambda = |a|^2 - |b|^2 + (-1)^xi 2 s Re(a conj b) / c.
/// Throws OutOfSupport unless |x| < |c|.
double f1(double x, const DensityParams& p);
double f1(const SupportPoint& pt, const DensityParams& p);

/// -(-1)^xi s Im(a conj b) / (|c| pi (1 - x^2)). Throws OutOfSupport unless |x| < |c|.
double f2(double x, const DensityParams& p);
double f2(const SupportPoint& pt, const DensityParams& p);

/// The asymmetry coefficient lambda of f1.
double f1_lambda(const DensityParams& p);

/// Group velocity h, eigenvector v and its normalization N of the walk in
/// momentum space; J = diag(1, (-1)^xi).
struct SpectralHelpers {
  double c;
  double s;
  int xi;

  double h(double k) const;
  double N(double k) const;
  /// Unit vector (e^{ik} s, -(c cos k + sqrt(1 - c^2 sin^2 k))) / sqrt(N(k)).
  std::array<Complex, 2> v(double k) const;
  std::array<double, 2> J() const { return {1.0, xi == 0 ? 1.0 : -1.0}; }
};

SpectralHelpers spectral_helpers(const CoinOperator& coin);

using MomentumProfile = std::function<Complex(double)>;

/// Four-term spectral density with Psi_0(k) = F(k) phi:
///   |s| / (2 pi (1 - x^2) sqrt(c^2 - x^2)) *
///     sum over (k, k') of |<v(k)| J Psi_0(k')>|^2
/// for (kappa, kappa + xi pi/2), (kappa, kappa - pi + xi pi/2),
/// (-kappa, -kappa + xi pi/2), (-kappa, pi - kappa + xi pi/2).
/// Zero outside (-|c|, |c|).
double density_general(double x, const MomentumProfile& F, const DensityParams& p);
double density_general(const SupportPoint& pt, const MomentumProfile& F, const DensityParams& p);

/// |F|^2 at the four pulled-back momenta, in the order used by eta1/eta2:
/// (kappa + xi pi/2, -kappa + xi pi/2, kappa - pi + xi pi/2, pi - kappa + xi pi/2).
std::array<double, 4> profile_weights(const SupportPoint& pt, const MomentumProfile& F,
                                      const DensityParams& p);

double eta1(double x, const MomentumProfile& F, const DensityParams& p);
double eta2(double x, const MomentumProfile& F, const DensityParams& p);
/// (|F(kappa + xi pi/2)|^2 + |F(kappa - pi + xi pi/2)|^2) / 2.
double eta3(double x, const MomentumProfile& F, const DensityParams& p);

/// f1 eta1 + f2 eta2; zero outside (-|c|, |c|).
double density_specialized(double x, const MomentumProfile& F, const DensityParams& p);
double density_specialized(const SupportPoint& pt, const MomentumProfile& F, const DensityParams& p);

/// f1 |F(kappa + xi pi/2)|^2, valid when |F(k - pi)| = |F(-k)| = |F(k)|.
double density_symmetric_profile(double x, const MomentumProfile& F, const DensityParams& p);

/// f1 eta3, valid when |F(-k)|^2 + |F(pi - k)|^2 = |F(k)|^2 + |F(k - pi)|^2.
double density_balanced_profile(double x, const MomentumProfile& F, const DensityParams& p);

/// Closed-form weights multiplying f1 (and f2 for Case 4). Throws
/// OutOfSupport unless |x| < |c|.
double g_case1(double x, const CoinOperator& coin);
double g_case2(double x, const CoinOperator& coin);
double g_case3(double x, const CoinOperator& coin);
double g_case4_even(double x, const CoinOperator& coin);  // weight on f1
double g_case4_odd(double x, const CoinOperator& coin);   // weight on f2
double g_case5(double x, const CoinOperator& coin, int n);
double g_case2(const SupportPoint& pt, const CoinOperator& coin);
double g_case3(const SupportPoint& pt, const CoinOperator& coin);
double g_case4_even(const SupportPoint& pt, const CoinOperator& coin);
double g_case4_odd(const SupportPoint& pt, const CoinOperator& coin);
double g_case5(const SupportPoint& pt, const CoinOperator& coin, int n);

/// Case weights (g on f1, g' on f2) for a named kind; Localized gives (1, 0).
/// Throws InvalidArgument for Generic.
struct CaseWeights {
  double on_f1 = 1.0;
  double on_f2 = 0.0;
};
CaseWeights g_case(const InitialKind& kind, double x, const CoinOperator& coin);
CaseWeights g_case(const InitialKind& kind, const SupportPoint& pt, const CoinOperator& coin);

/// Evaluable density on (-|c|, |c|), zero outside.
class LimitDensity {
 public:
  enum class Form { GeneralSpectral, Specialized, ClosedForm };

  static LimitDensity general(const DensityParams& p, MomentumProfile F,
                              std::vector<double> interior_splits = {});
  static LimitDensity specialized(const DensityParams& p, MomentumProfile F,
                                  std::vector<double> interior_splits = {});
  /// f1 g (+ f2 g') for Localized and Cases 1-5.
  static LimitDensity closed_form(const DensityParams& p, const InitialKind& kind);
  /// Closed form for named kinds, specialized form for Generic.
  static LimitDensity for_spec(const InitialSpec& spec, const CoinOperator& coin);

  double operator()(double x) const;
  double at(const SupportPoint& pt) const;
  /// density(|c| sin u) |c| cos u, the integrand in the angle variable.
  double in_angle(double u) const;

  const DensityParams& params() const noexcept { return params_; }
  Form form() const noexcept { return form_; }
  double support() const noexcept { return params_.support(); }
  /// Interior points where the density diverges or jumps.
  const std::vector<double>& interior_splits() const noexcept { return splits_; }
  std::string label() const { return label_; }

 private:
  LimitDensity(const DensityParams& p, Form form);

  DensityParams params_;
  Form form_;
  MomentumProfile F_;
  std::shared_ptr<const InitialKind> kind_;
  std::vector<double> splits_;
  std::string label_;
};

/// Known divergence/jump loci for the named kinds at this xi.
std::vector<double> interior_splits_for(const InitialKind& kind, int xi);

/// Integral of the density over (-|c|, x].
double analytic_cdf(const LimitDensity& density, double x);

}  // namespace qwalk
