#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/limit_densities.hpp"
#include "qwalk/quadrature.hpp"

using namespace qwalk;
using qwalk::testing::Gen;
using std::numbers::pi;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);
const SpinVector kPhi{Complex(kR2, 0.0), Complex(0.0, kR2)};
const CoinOperator kHadamard = make_coin(0, pi / 4);

const std::vector<InitialKind> kCases{kinds::Case1{0.5}, kinds::Case2{}, kinds::Case3{}, kinds::Case4{},
                                      kinds::Case5{0},   kinds::Case5{4}};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

double close_rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("kappa examples") {
  Gen gen(61);
  for (int i = 0; i < 50; ++i) CHECK(kappa(0.0, gen.coin()) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(kappa(0.5, kHadamard) == doctest::Approx(0.955317).epsilon(1e-6));
  CHECK(std::abs(kappa(0.5, kHadamard) - std::acos(1.0 / std::sqrt(3.0))) < 1e-15);

  const double c = kHadamard.c();
  CHECK(kappa(c - 1e-13, kHadamard) < 1e-5);
  CHECK(kappa(SupportPoint::at(c, c), kHadamard) == 0.0);
  const auto negative = make_coin(0, 3 * pi / 4);
  CHECK(kappa(std::abs(negative.c()) - 1e-13, negative) > pi - 1e-5);

  CHECK_NOTHROW(kappa(c + 1e-13, kHadamard));
  CHECK(code_of([&] { kappa(c + 1e-6, kHadamard); }) == ErrorCode::OutOfSupport);
}

TEST_CASE("property: kappa is monotone in x") {
  Gen gen(62);
  for (int i = 0; i < 100; ++i) {
    const auto coin = gen.coin();
    const double r = std::abs(coin.c());
    double prev = kappa(-r * 0.999, coin);
    const double direction = coin.c() > 0 ? -1.0 : 1.0;
    for (int j = 1; j <= 50; ++j) {
      const double k = kappa(-r * 0.999 + j * (1.998 * r / 50), coin);
      CHECK((k - prev) * direction >= 0.0);
      prev = k;
    }
  }
}

TEST_CASE("f1 and f2 examples") {
  for (int xi : {0, 1}) {
    const DensityParams p(make_coin(xi, pi / 4), kPhi);
    CHECK(f1(0.0, p) == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(f1_lambda(p) == 0.0);
  }
  const DensityParams real_phi(kHadamard, {kR2, kR2});
  Gen gen(63);
  for (int i = 0; i < 20; ++i) CHECK(f2(gen.uniform(-0.7, 0.7), real_phi) == 0.0);

  const DensityParams up(kHadamard, {1.0, 0.0});
  CHECK(f1_lambda(up) == 1.0);
  CHECK(f1(-0.3, up) > f1(0.3, up));

  CHECK(code_of([&] { f1(0.71, up); }) == ErrorCode::OutOfSupport);
  CHECK(code_of([&] { DensityParams(make_coin(0, 0.0), kPhi); }) == ErrorCode::DegenerateTheta);
}

TEST_CASE("spectral helpers") {
  Gen gen(64);
  for (int i = 0; i < 20; ++i) {
    const auto coin = gen.coin();
    const auto h = spectral_helpers(coin);
    CHECK(h.h(0.0) == doctest::Approx(coin.c()).epsilon(1e-15));
    CHECK(std::abs(h.h(pi / 2)) < 1e-15);
    CHECK(h.N(0.0) == doctest::Approx(2.0 + 2.0 * coin.c()).epsilon(1e-13));
    double worst = 0.0;
    for (int j = 0; j < 10000; ++j) {
      const double k = -pi + 2 * pi * (j + 0.5) / 10000;
      const auto v = h.v(k);
      worst = std::max(worst, std::abs(std::norm(v[0]) + std::norm(v[1]) - 1.0));
    }
    CHECK(worst < 1e-12);
  }
  CHECK(spectral_helpers(make_coin(0, 1.0)).J() == std::array<double, 2>{1.0, 1.0});
  CHECK(spectral_helpers(make_coin(1, 1.0)).J() == std::array<double, 2>{1.0, -1.0});
}

TEST_CASE("localized density from the spectral form") {
  const DensityParams p(kHadamard, kPhi);
  const MomentumProfile one = [](double) { return Complex(1.0, 0.0); };
  CHECK(density_general(0.0, one, p) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(density_general(0.8, one, p) == 0.0);
  CHECK(density_general(-0.8, one, p) == 0.0);
  CHECK(density_general(kHadamard.c(), one, p) == 0.0);
  CHECK(eta1(0.3, one, p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta2(0.3, one, p) == doctest::Approx(0.0));
}

TEST_CASE("property: general and specialized forms agree") {
  Gen gen(65);
  for (const auto& kind : kCases) {
    const auto F = momentum_profile(kind);
    for (int i = 0; i < 200; ++i) {
      const auto coin = make_coin(gen.integer(0, 1), gen.theta());
      const DensityParams p(coin, gen.spin());
      const double x = gen.uniform(-0.999, 0.999) * p.support();
      const double g = density_general(x, F, p);
      const double s = density_specialized(x, F, p);
      CAPTURE(describe(kind));
      CAPTURE(x);
      REQUIRE(close_rel(g, s) < 1e-9);
      const double cf = LimitDensity::closed_form(p, kind)(x);
      REQUIRE(close_rel(cf, s) < 1e-9);
    }
  }
}

TEST_CASE("Case 2 near the support endpoints stays finite") {
  const DensityParams p(kHadamard, kPhi);
  const auto F = momentum_profile(kinds::Case2{});
  const double c = kHadamard.c();
  for (double x : {c - 1e-3, -c + 1e-3}) {
    const double s = density_specialized(x, F, p);
    CHECK(std::isfinite(s));
    CHECK(s > 1.0);
    CHECK(close_rel(density_general(x, F, p), s) < 1e-9);
    CHECK(close_rel(f1(x, p) * g_case2(x, kHadamard), s) < 1e-9);
  }
}

TEST_CASE("corollary forms") {
  Gen gen(66);
  for (int i = 0; i < 200; ++i) {
    const auto coin = make_coin(gen.integer(0, 1), gen.theta());
    const DensityParams p(coin, gen.spin());
    const double x = gen.uniform(-0.99, 0.99) * p.support();
    for (const auto& kind : {InitialKind{kinds::Case1{0.3}}, InitialKind{kinds::Case2{}}, InitialKind{kinds::Case5{2}}}) {
      const auto F = momentum_profile(kind);
      CHECK(close_rel(density_symmetric_profile(x, F, p), density_specialized(x, F, p)) < 1e-9);
    }
    const auto F3 = momentum_profile(kinds::Case3{});
    CHECK(close_rel(density_balanced_profile(x, F3, p), density_specialized(x, F3, p)) < 1e-9);
  }
}

TEST_CASE("case weights examples") {
  Gen gen(67);
  const auto h1 = make_coin(1, pi / 4);
  CHECK(g_case2(0.0, h1) == doctest::Approx(3.0 / (pi * pi) * std::log(4.0) * std::log(4.0)).epsilon(1e-14));
  CHECK(g_case2(0.0, h1) == doctest::Approx(0.584162).epsilon(1e-6));
  for (int i = 0; i < 100; ++i) {
    const auto coin = gen.coin();
    const double x = gen.uniform(-0.99, 0.99) * std::abs(coin.c());
    CHECK(g_case1(x, coin) == 1.0);
    CHECK(g_case5(x, coin, 0) == 1.0);
    const auto w = g_case(kinds::Localized{}, x, coin);
    CHECK(w.on_f1 == 1.0);
    CHECK(w.on_f2 == 0.0);
  }
  CHECK(code_of([] { g_case(kinds::Generic{}, 0.1, kHadamard); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { g_case2(0.9, kHadamard); }) == ErrorCode::OutOfSupport);
}

TEST_CASE("Case 1 and Case 5 n = 0 reduce to the localized density") {
  Gen gen(68);
  for (int i = 0; i < 50; ++i) {
    const DensityParams p(gen.coin(), gen.spin());
    const auto loc = LimitDensity::closed_form(p, kinds::Localized{});
    const auto c1 = LimitDensity::closed_form(p, kinds::Case1{gen.uniform(0.05, 0.95)});
    const auto c5 = LimitDensity::closed_form(p, kinds::Case5{0});
    const auto spectral = LimitDensity::general(p, [](double) { return Complex(1.0, 0.0); });
    for (int j = 0; j < 20; ++j) {
      const double x = gen.uniform(-0.99, 0.99) * p.support();
      CHECK(std::abs(c1(x) - loc(x)) <= 1e-12 * std::max(1.0, loc(x)));
      CHECK(std::abs(c5(x) - loc(x)) <= 1e-12 * std::max(1.0, loc(x)));
      CHECK(close_rel(spectral(x), loc(x)) < 1e-12);
    }
  }
}

TEST_CASE("property: densities are nonnegative") {
  Gen gen(69);
  for (const auto& kind : kCases) {
    for (int i = 0; i < 10; ++i) {
      const DensityParams p(make_coin(gen.integer(0, 1), gen.theta()), gen.spin());
      const auto d = LimitDensity::closed_form(p, kind);
      for (int j = 0; j < 1000; ++j) {
        const double x = (-1.0 + 2.0 * (j + 0.5) / 1000) * p.support();
        REQUIRE(d(x) >= -1e-12);
      }
    }
  }
}

TEST_CASE("property: densities integrate to one in every quadrant") {
  Gen gen(70);
  for (const auto& kind : kCases) {
    for (int xi : {0, 1}) {
      for (int quadrant = 0; quadrant < 4; ++quadrant) {
        const auto coin = make_coin(xi, gen.theta_in_quadrant(quadrant));
        const auto d = LimitDensity::closed_form(DensityParams(coin, gen.spin()), kind);
        CAPTURE(d.label());
        CAPTURE(coin.theta());
        CHECK(std::abs(analytic_moment(d, 0) - 1.0) < 1e-6);
      }
    }
  }
}

TEST_CASE("Case 2 with xi = 0 integrates across its interior singularity") {
  const auto d = LimitDensity::closed_form(DensityParams(kHadamard, kPhi), kinds::Case2{});
  CHECK(d.interior_splits() == std::vector<double>{0.0});
  CHECK(d(1e-12) > d(1e-3));
  CHECK(std::abs(analytic_moment(d, 0) - 1.0) < 1e-6);
}

TEST_CASE("adaptive quadrature against a brute-force midpoint sum") {
  const auto d = LimitDensity::closed_form(DensityParams(kHadamard, kPhi), kinds::Case1{0.5});
  const double total = riemann_midpoint_angle([&](double u) { return d.in_angle(u); }, 1000000);
  CHECK(std::abs(total - 1.0) < 1e-8);
  const double m2 = analytic_moment(d, 2);
  CHECK(std::abs(m2 - (1.0 - kR2)) < 1e-8);
  const double c = d.support();
  const double m2_riemann = riemann_midpoint_angle(
      [&](double u) {
        const double x = c * std::sin(u);
        return x * x * d.in_angle(u);
      },
      1000000);
  CHECK(std::abs(m2_riemann - m2) < 1e-8);
}

TEST_CASE("mean flips sign with xi when |alpha| = |beta| and Re(alpha conj beta) != 0") {
  const SpinVector real_phi{kR2, kR2};
  Gen gen(71);
  for (int i = 0; i < 5; ++i) {
    const double theta = gen.theta();
    const auto d0 = LimitDensity::closed_form(DensityParams(make_coin(0, theta), real_phi), kinds::Case1{0.5});
    const auto d1 = LimitDensity::closed_form(DensityParams(make_coin(1, theta), real_phi), kinds::Case1{0.5});
    const double m0 = analytic_moment(d0, 1), m1 = analytic_moment(d1, 1);
    CHECK(std::abs(m0) > 1e-3);
    CHECK(std::abs(m0 + m1) < 1e-9);
  }
  const auto sym = LimitDensity::closed_form(DensityParams(kHadamard, kPhi), kinds::Case1{0.5});
  CHECK(std::abs(analytic_moment(sym, 1)) < 1e-10);
}

TEST_CASE("analytic CDF") {
  const auto sym = LimitDensity::closed_form(DensityParams(kHadamard, kPhi), kinds::Case1{0.5});
  CHECK(analytic_cdf(sym, -1.0) == 0.0);
  CHECK(analytic_cdf(sym, -sym.support()) == 0.0);
  CHECK(std::abs(analytic_cdf(sym, 1.0) - 1.0) < 1e-8);
  CHECK(std::abs(analytic_cdf(sym, 0.0) - 0.5) < 1e-9);

  const auto c4 = LimitDensity::closed_form(DensityParams(make_coin(1, pi / 4), kPhi), kinds::Case4{});
  CHECK(std::abs(c4(1e-6) - c4(-1e-6)) > 0.01);
  std::vector<double> pts;
  for (int i = 0; i <= 200; ++i) pts.push_back(-0.75 + 1.5 * i / 200);
  const auto cdf = analytic_cdf_batch(c4, pts);
  for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i] >= cdf[i - 1]);
  CHECK(cdf.front() == 0.0);
  CHECK(std::abs(cdf.back() - 1.0) < 1e-6);
  CHECK(std::abs(cdf[100] - analytic_cdf(c4, 0.0)) < 1e-9);
}

TEST_CASE("interior splits") {
  CHECK(interior_splits_for(kinds::Case4{}, 0) == std::vector<double>{0.0});
  CHECK(interior_splits_for(kinds::Case4{}, 1) == std::vector<double>{0.0});
  CHECK(interior_splits_for(kinds::Case2{}, 0) == std::vector<double>{0.0});
  CHECK(interior_splits_for(kinds::Case1{0.5}, 0).empty());
}

TEST_CASE("generic spec uses the specialized form") {
  const auto cf = coefficient_functions(kinds::Case4{});
  kinds::Generic g{PeriodicFunction(cf.w1), PeriodicFunction(cf.w2)};
  const auto coin = make_coin(1, pi / 4);
  const auto generic = LimitDensity::for_spec({g, kPhi, TruncationPolicy{}}, coin);
  const auto closed = LimitDensity::for_spec({kinds::Case4{}, kPhi, TruncationPolicy{}}, coin);
  CHECK(generic.form() == LimitDensity::Form::Specialized);
  CHECK(closed.form() == LimitDensity::Form::ClosedForm);
  Gen gen(72);
  for (int i = 0; i < 100; ++i) {
    const double x = gen.uniform(-0.7, 0.7);
    CHECK(close_rel(generic(x), closed(x)) < 1e-9);
  }
}

TEST_CASE("angle integrand is finite up to the rounded endpoints") {
  Gen gen(73);
  for (const auto& kind : kCases) {
    for (int xi : {0, 1}) {
      const auto d = LimitDensity::closed_form(DensityParams(make_coin(xi, gen.theta()), gen.spin()), kind);
      for (double u : {-pi / 2, pi / 2, std::nextafter(pi / 2, 0.0), std::nextafter(-pi / 2, 0.0)}) {
        CAPTURE(d.label());
        CHECK(std::isfinite(d.in_angle(u)));
      }
    }
  }
}
