#include "qwalk/limit_densities.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

// sin(theta) below this makes the support degenerate and kappa undefined.
constexpr double kMinAbsSin = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_open_support(const SupportPoint& pt, const DensityParams& p) {
  if (!(std::abs(pt.x) <= p.support()) || !(pt.gap > 0.0)) {
    throw Error(ErrorCode::OutOfSupport,
                "x = " + fmt(pt.x) + " is outside (-|c|, |c|) with |c| = " + fmt(p.support()));
  }
}

bool inside(const SupportPoint& pt, const DensityParams& p) {
  return std::abs(pt.x) <= p.support() && pt.gap > 0.0;
}

// |s| / (pi (1 - x^2) sqrt(c^2 - x^2))
double base(const SupportPoint& pt, const DensityParams& p) {
  return std::abs(p.s()) / (pi * (1.0 - pt.x * pt.x) * std::sqrt(pt.gap));
}

}  // namespace

SupportPoint SupportPoint::at(double x, double c) {
  const double ac = std::abs(c);
  return {x, (ac - x) * (ac + x)};
}

SupportPoint SupportPoint::from_angle(double u, double c) {
  const double ac = std::abs(c);
  const double cu = std::cos(u);
  return {ac * std::sin(u), ac * ac * cu * cu};
}

DensityParams::DensityParams(const CoinOperator& coin, const SpinVector& phi) : coin_(coin), phi_(phi) {
  if (std::abs(coin.s()) < kMinAbsSin) {
    throw Error(ErrorCode::DegenerateTheta, "sin(theta) = 0 leaves no limit density");
  }
}

double kappa(const SupportPoint& pt, const CoinOperator& coin) {
  const double ac = std::abs(coin.c());
  if (!(std::abs(pt.x) <= ac + kKappaClampBand) || !(std::abs(pt.x) < 1.0)) {
    throw Error(ErrorCode::OutOfSupport, "kappa: x = " + fmt(pt.x) + " is outside [-|c|, |c|]");
  }
  // cos kappa = |s| x / (c sqrt(1 - x^2)) and sin kappa = sqrt(c^2 - x^2) / (|c| sqrt(1 - x^2));
  // the common positive factor |c| sqrt(1 - x^2) drops out of atan2.
  const double sign_c = coin.c() > 0.0 ? 1.0 : -1.0;
  return std::atan2(std::sqrt(std::max(pt.gap, 0.0)), sign_c * std::abs(coin.s()) * pt.x);
}

double kappa(double x, const CoinOperator& coin) { return kappa(SupportPoint::at(x, coin.c()), coin); }

double f1_lambda(const DensityParams& p) {
  const Complex a = p.phi().alpha, b = p.phi().beta;
  const Complex ab = a * std::conj(b);
  return std::norm(a) - std::norm(b) + p.coin().sign() * 2.0 * p.s() * ab.real() / p.c();
}

double f1(const SupportPoint& pt, const DensityParams& p) {
  require_open_support(pt, p);
  return base(pt, p) * (1.0 - f1_lambda(p) * pt.x);
}

double f1(double x, const DensityParams& p) { return f1(SupportPoint::at(x, p.c()), p); }

double f2(const SupportPoint& pt, const DensityParams& p) {
  require_open_support(pt, p);
  const Complex ab = p.phi().alpha * std::conj(p.phi().beta);
  return -p.coin().sign() * p.s() * ab.imag() / (p.support() * pi * (1.0 - pt.x * pt.x));
}

double f2(double x, const DensityParams& p) { return f2(SupportPoint::at(x, p.c()), p); }

double SpectralHelpers::h(double k) const {
  const double sk = std::sin(k);
  return c * std::cos(k) / std::sqrt(1.0 - c * c * sk * sk);
}

double SpectralHelpers::N(double k) const {
  const double sk = std::sin(k);
  return 1.0 + s * s + c * c * std::cos(2.0 * k) + 2.0 * c * std::cos(k) * std::sqrt(1.0 - c * c * sk * sk);
}

std::array<Complex, 2> SpectralHelpers::v(double k) const {
  const double sk = std::sin(k);
  const double root = std::sqrt(1.0 - c * c * sk * sk);
  const double norm = std::sqrt(N(k));
  return {std::polar(s / norm, k), Complex(-(c * std::cos(k) + root) / norm, 0.0)};
}

SpectralHelpers spectral_helpers(const CoinOperator& coin) { return {coin.c(), coin.s(), coin.xi()}; }

double density_general(const SupportPoint& pt, const MomentumProfile& F, const DensityParams& p) {
  if (!inside(pt, p)) return 0.0;
  const SpectralHelpers sh = spectral_helpers(p.coin());
  const auto J = sh.J();
  const Complex alpha = p.phi().alpha, beta = p.phi().beta;
  const double ka = kappa(pt, p.coin());
  const double shift = p.xi() * pi / 2.0;
  auto term = [&](double k, double k_profile) {
    const auto vk = sh.v(k);
    const Complex f = F(k_profile);
    const Complex overlap = std::conj(vk[0]) * (J[0] * f * alpha) + std::conj(vk[1]) * (J[1] * f * beta);
    return std::norm(overlap);
  };
  const double eta = term(ka, ka + shift) + term(ka, ka - pi + shift) + term(-ka, -ka + shift) +
                     term(-ka, pi - ka + shift);
  return 0.5 * base(pt, p) * eta;
}

double density_general(double x, const MomentumProfile& F, const DensityParams& p) {
  return density_general(SupportPoint::at(x, p.c()), F, p);
}

std::array<double, 4> profile_weights(const SupportPoint& pt, const MomentumProfile& F,
                                      const DensityParams& p) {
  const double ka = kappa(pt, p.coin());
  const double shift = p.xi() * pi / 2.0;
  return {std::norm(F(ka + shift)), std::norm(F(-ka + shift)), std::norm(F(ka - pi + shift)),
          std::norm(F(pi - ka + shift))};
}

double eta1(double x, const MomentumProfile& F, const DensityParams& p) {
  const auto w = profile_weights(SupportPoint::at(x, p.c()), F, p);
  return (w[0] + w[1] + w[2] + w[3]) / 4.0;
}

double eta2(double x, const MomentumProfile& F, const DensityParams& p) {
  const auto w = profile_weights(SupportPoint::at(x, p.c()), F, p);
  return (w[0] - w[1] + w[2] - w[3]) / 2.0;
}

double eta3(double x, const MomentumProfile& F, const DensityParams& p) {
  const auto w = profile_weights(SupportPoint::at(x, p.c()), F, p);
  return (w[0] + w[2]) / 2.0;
}

double density_specialized(const SupportPoint& pt, const MomentumProfile& F, const DensityParams& p) {
  if (!inside(pt, p)) return 0.0;
  const auto w = profile_weights(pt, F, p);
  const double e1 = (w[0] + w[1] + w[2] + w[3]) / 4.0;
  const double e2 = (w[0] - w[1] + w[2] - w[3]) / 2.0;
  return f1(pt, p) * e1 + f2(pt, p) * e2;
}

double density_specialized(double x, const MomentumProfile& F, const DensityParams& p) {
  return density_specialized(SupportPoint::at(x, p.c()), F, p);
}

double density_symmetric_profile(double x, const MomentumProfile& F, const DensityParams& p) {
  const SupportPoint pt = SupportPoint::at(x, p.c());
  if (!inside(pt, p)) return 0.0;
  return f1(pt, p) * std::norm(F(kappa(pt, p.coin()) + p.xi() * pi / 2.0));
}

double density_balanced_profile(double x, const MomentumProfile& F, const DensityParams& p) {
  const SupportPoint pt = SupportPoint::at(x, p.c());
  if (!inside(pt, p)) return 0.0;
  return f1(pt, p) * eta3(x, F, p);
}

LimitDensity::LimitDensity(const DensityParams& p, Form form) : params_(p), form_(form) {}

LimitDensity LimitDensity::general(const DensityParams& p, MomentumProfile F, std::vector<double> interior_splits) {
  LimitDensity d(p, Form::GeneralSpectral);
  d.F_ = std::move(F);
  d.splits_ = std::move(interior_splits);
  d.label_ = "general";
  return d;
}

LimitDensity LimitDensity::specialized(const DensityParams& p, MomentumProfile F,
                                       std::vector<double> interior_splits) {
  LimitDensity d(p, Form::Specialized);
  d.F_ = std::move(F);
  d.splits_ = std::move(interior_splits);
  d.label_ = "specialized";
  return d;
}

LimitDensity LimitDensity::closed_form(const DensityParams& p, const InitialKind& kind) {
  if (std::holds_alternative<kinds::Generic>(kind)) {
    throw Error(ErrorCode::InvalidArgument, "generic initial states have no closed-form density");
  }
  if (std::holds_alternative<kinds::Case1>(kind)) case_amplitude(kind, 0);  // rejects integer a
  if (const auto* c5 = std::get_if<kinds::Case5>(&kind); c5 && c5->n < 0) {
    throw Error(ErrorCode::InvalidArgument, "Case 5 needs n >= 0");
  }
  LimitDensity d(p, Form::ClosedForm);
  d.kind_ = std::make_shared<const InitialKind>(kind);
  d.splits_ = interior_splits_for(kind, p.xi());
  d.label_ = describe(kind);
  return d;
}

LimitDensity LimitDensity::for_spec(const InitialSpec& spec, const CoinOperator& coin) {
  const DensityParams p(coin, spec.phi);
  if (std::holds_alternative<kinds::Generic>(spec.kind)) {
    LimitDensity d = specialized(p, momentum_profile(spec.kind));
    d.label_ = describe(spec.kind);
    return d;
  }
  return closed_form(p, spec.kind);
}

double LimitDensity::at(const SupportPoint& pt) const {
  if (!inside(pt, params_)) return 0.0;
  switch (form_) {
    case Form::GeneralSpectral:
      return density_general(pt, F_, params_);
    case Form::Specialized:
      return density_specialized(pt, F_, params_);
    case Form::ClosedForm: {
      const CaseWeights w = g_case(*kind_, pt, params_.coin());
      const double even = f1(pt, params_) * w.on_f1;
      return w.on_f2 == 0.0 ? even : even + f2(pt, params_) * w.on_f2;
    }
  }
  return 0.0;
}

double LimitDensity::operator()(double x) const { return at(SupportPoint::at(x, params_.c())); }

double LimitDensity::in_angle(double u) const {
  const SupportPoint pt = SupportPoint::from_angle(u, params_.c());
  if (!(pt.gap > 0.0)) return 0.0;
  return at(pt) * std::sqrt(pt.gap);
}

double analytic_cdf(const LimitDensity& density, double x) {
  const double r = density.support();
  if (x <= -r) return 0.0;
  const auto g = [&](double u) { return density.in_angle(u); };
  return quad_angle_interval(g, r, -r, std::min(x, r), density.interior_splits());
}

}  // namespace qwalk
