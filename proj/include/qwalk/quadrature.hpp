#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  /// Bisection depth limit per panel; exceeding it throws NoConvergence.
  int max_depth = 40;
  double abs_tol = 1e-15;
};

using RealFunction = std::function<double(double)>;

/// Integral of f over (-|c|, |c|). The substitution x = |c| sin u removes the
/// inverse square-root endpoint behaviour; each panel between `splits` is
/// then integrated by globally adaptive 15-point Gauss-Legendre bisection.
double quad_singular(const RealFunction& f, const CoinOperator& coin,
                     std::span<const double> splits = {}, const QuadratureOptions& opts = {});

/// Same scheme over [lo, hi], clipped to (-radius, radius).
double quad_support_interval(const RealFunction& f, double radius, double lo, double hi,
                             std::span<const double> splits = {},
                             const QuadratureOptions& opts = {});

/// Running integrals from -radius to each of the ascending `points`, built by
/// integrating the consecutive gaps once each and summing with compensation.
std::vector<double> cumulative_integrals(const RealFunction& f, double radius,
                                         std::span<const double> points,
                                         std::span<const double> splits = {},
                                         const QuadratureOptions& opts = {});

/// Variants taking the integrand already in the angle variable,
/// g(u) = f(radius sin u) radius cos u, with limits and splits still in x.
double quad_angle_interval(const RealFunction& g, double radius, double lo, double hi,
                           std::span<const double> splits = {}, const QuadratureOptions& opts = {});
std::vector<double> cumulative_angle_integrals(const RealFunction& g, double radius,
                                               std::span<const double> points,
                                               std::span<const double> splits = {},
                                               const QuadratureOptions& opts = {});
double riemann_midpoint_angle(const RealFunction& g, std::size_t points);

/// Midpoint rule with `points` cells in u over (-pi/2, pi/2); a brute-force
/// reference for quad_singular.
double riemann_midpoint(const RealFunction& f, double radius, std::size_t points);

/// The 15-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_15();

}  // namespace qwalk
