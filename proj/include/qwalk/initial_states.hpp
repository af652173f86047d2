#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Unit spin vector alpha|0> + beta|1>.
struct SpinVector {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  /// Throws InvalidSpin unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
  static SpinVector make(Complex alpha, Complex beta);
};

struct TruncationPolicy {
  enum class Mode { TailMass, FixedRadius };

  Mode mode = Mode::TailMass;
  double epsilon = 1e-8;
  std::int64_t radius = 0;
  bool renormalize = true;

  static TruncationPolicy tail_mass(double epsilon, bool renormalize = true);
  static TruncationPolicy fixed_radius(std::int64_t radius, bool renormalize = true);
  void validate() const;
};

/// A real 2pi-periodic function, either a callable or uniform samples on
/// k_m = -pi + 2 pi m / M (m = 0..M-1). Samples are linearly interpolated.
class PeriodicFunction {
 public:
  PeriodicFunction() = default;
  PeriodicFunction(std::function<double(double)> fn);  // NOLINT: implicit by intent
  static PeriodicFunction from_samples(std::vector<double> samples);

  double operator()(double k) const;
  bool sampled() const noexcept { return !samples_.empty(); }
  std::span<const double> samples() const noexcept { return samples_; }

 private:
  std::function<double(double)> fn_;
  std::vector<double> samples_;
};

/// Reads a two-column CSV with header `k,w` on a uniform grid over [-pi, pi)
/// (final point excluded).
PeriodicFunction load_samples_csv(const std::string& path);

namespace kinds {
struct Localized {};
struct Case1 { double a = 0.5; };
struct Case2 {};
struct Case3 {};
struct Case4 {};
struct Case5 { int n = 0; };
struct Generic {
  PeriodicFunction w1;
  PeriodicFunction w2;
};
}  // namespace kinds

using InitialKind = std::variant<kinds::Localized, kinds::Case1, kinds::Case2, kinds::Case3,
                                 kinds::Case4, kinds::Case5, kinds::Generic>;

struct InitialSpec {
  InitialKind kind = kinds::Localized{};
  SpinVector phi;
  TruncationPolicy truncation;
};

/// "localized", "case1(a=0.5)", "case2", ..., "case5(n=50)", "generic".
std::string describe(const InitialKind& kind);

/// Amplitude window psi_0(x) = a(x) phi. With renormalize the scalar
/// amplitudes are rescaled to unit total probability; the discarded tail is
/// reported by WalkState::truncated_mass().
WalkState build(const InitialSpec& spec, std::size_t window_cap = kDefaultWindowCap);

/// Closed-form scalar multiplier of phi for the named cases (Localized and
/// Case1..Case5). Throws InvalidArgument for Generic, IntegerA for integer a.
Complex case_amplitude(const InitialKind& kind, std::int64_t x);

/// Sum over the window of <psi(x)|psi(x)>.
double parseval_check(const WalkState& state);

/// Positions chi_{n,j}, j = 0..n, carrying the Case 5 amplitude.
std::vector<std::int64_t> case5_support(int n);

struct CoefficientFunctions {
  std::function<double(double)> w1;
  std::function<double(double)> w2;
  /// Panel boundaries in [-pi, pi] where w1/w2 jump, kink, or diverge.
  std::vector<double> breakpoints;
};

CoefficientFunctions coefficient_functions(const InitialKind& kind);

/// W(w1, w2) = integral over [-pi, pi] of w1^2 + w2^2.
double normalization_constant(const InitialKind& kind);

/// F(k) = sqrt(2 pi / W) (w1(k) + i w2(k)), the momentum profile of the
/// initial state, so that Psi_0^(k) = F(k) phi.
std::function<Complex(double)> momentum_profile(const InitialKind& kind);

/// d1(x) + i d2(x) with d_j(x) = (2 pi)^{-1/2} int_{-pi}^{pi} w_j(k) e^{ikx} dk.
/// Each panel between breakpoints is mapped through a polynomial sigmoid and
/// sampled on a midpoint grid, so no node lands on a breakpoint.
Complex generic_d(const std::function<double(double)>& w1, const std::function<double(double)>& w2,
                  std::int64_t x, int quadrature_points, std::span<const double> breakpoints = {});

/// Quadrature of w over [-pi, pi] with the same panel scheme as generic_d.
double periodic_integral(const std::function<double(double)>& w, int quadrature_points,
                         std::span<const double> breakpoints = {});

}  // namespace qwalk
