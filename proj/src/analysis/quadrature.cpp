#include "qwalk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/numeric.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundoffFactor = 50.0;

GaussLegendreRule make_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  // The middle node of an odd rule is exactly zero.
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

void check_finite(double v, double u) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at u = " << u;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
}

// Integrand in u; for x-space callers g(u) = f(r sin u) r cos u.
struct Substituted {
  const RealFunction& g;

  double operator()(double u) const {
    const double v = g(u);
    check_finite(v, u);
    return v;
  }
};

RealFunction to_angle(const RealFunction& f, double radius) {
  return [&f, radius](double u) { return f(radius * std::sin(u)) * radius * std::cos(u); };
}

double gauss(const Substituted& g, double a, double b) {
  const auto& rule = gauss_legendre_15();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * g(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct Segment {
  double a, b;
  double left, right;  // rule on each half
  double err;
  int depth;
  double value() const { return left + right; }
};

Segment make_segment(const Substituted& g, double a, double b, double whole, int depth) {
  const double m = 0.5 * (a + b);
  Segment s{a, b, gauss(g, a, m), gauss(g, m, b), 0.0, depth};
  s.err = std::abs(whole - s.value());
  // Differences at the rounding level carry no information about the
  // truncation error and would otherwise drive endless bisection.
  if (s.err < kRoundoffFactor * kEps * (std::abs(s.left) + std::abs(s.right))) s.err = 0.0;
  return s;
}

// Globally adaptive bisection over the given panel boundaries in u.
double adaptive(const Substituted& g, std::span<const double> edges, const QuadratureOptions& opts) {
  auto by_error = [](const Segment& x, const Segment& y) { return x.err < y.err; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(by_error)> heap(by_error);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    heap.push(make_segment(g, edges[i], edges[i + 1], gauss(g, edges[i], edges[i + 1]), 0));
  }
  if (heap.empty()) return 0.0;

  auto totals = [&heap] {
    // priority_queue hides its container; copy it to sum in a fixed order.
    auto copy = heap;
    std::vector<Segment> all;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    CompensatedSum value, magnitude, error;
    for (const Segment& s : all) {
      value.add(s.value());
      magnitude.add(std::abs(s.left) + std::abs(s.right));
      error.add(s.err);
    }
    return std::array<double, 3>{value.value(), magnitude.value(), error.value()};
  };

  double err_total = 0.0, value_total = 0.0, magnitude_total = 0.0;
  {
    const auto t = totals();
    value_total = t[0];
    magnitude_total = t[1];
    err_total = t[2];
  }
  for (;;) {
    const double tol = std::max(opts.rel_tol * std::max(std::abs(value_total), magnitude_total),
                                opts.abs_tol);
    if (err_total <= tol) {
      // The running totals drift; confirm against a fresh summation.
      const auto t = totals();
      value_total = t[0];
      magnitude_total = t[1];
      err_total = t[2];
      const double fresh_tol =
          std::max(opts.rel_tol * std::max(std::abs(value_total), magnitude_total), opts.abs_tol);
      if (err_total <= fresh_tol) return value_total;
    }
    Segment worst = heap.top();
    heap.pop();
    if (worst.depth + 1 > opts.max_depth) {
      std::ostringstream os;
      os.precision(6);
      os << "adaptive quadrature exceeded depth " << opts.max_depth << " near u = " << worst.a
         << " (error estimate " << err_total << ")";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    const double m = 0.5 * (worst.a + worst.b);
    const Segment l = make_segment(g, worst.a, m, worst.left, worst.depth + 1);
    const Segment r = make_segment(g, m, worst.b, worst.right, worst.depth + 1);
    err_total += l.err + r.err - worst.err;
    value_total += l.value() + r.value() - worst.value();
    magnitude_total += std::abs(l.left) + std::abs(l.right) + std::abs(r.left) + std::abs(r.right) -
                       std::abs(worst.left) - std::abs(worst.right);
    heap.push(l);
    heap.push(r);
  }
}

double to_u(double x, double radius) {
  const double q = std::clamp(x / radius, -1.0, 1.0);
  return std::asin(q);
}

std::vector<double> panel_edges(double radius, double lo, double hi, std::span<const double> splits) {
  std::vector<double> edges{to_u(lo, radius)};
  for (double sp : splits) {
    if (sp > lo && sp < hi) edges.push_back(to_u(sp, radius));
  }
  edges.push_back(to_u(hi, radius));
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_15() {
  static const GaussLegendreRule rule = make_rule(15);
  return rule;
}

double quad_angle_interval(const RealFunction& g, double radius, double lo, double hi,
                           std::span<const double> splits, const QuadratureOptions& opts) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "support radius must be positive");
  lo = std::max(lo, -radius);
  hi = std::min(hi, radius);
  if (!(hi > lo)) return 0.0;
  return adaptive(Substituted{g}, panel_edges(radius, lo, hi, splits), opts);
}

double quad_support_interval(const RealFunction& f, double radius, double lo, double hi,
                             std::span<const double> splits, const QuadratureOptions& opts) {
  return quad_angle_interval(to_angle(f, radius), radius, lo, hi, splits, opts);
}

double quad_singular(const RealFunction& f, const CoinOperator& coin, std::span<const double> splits,
                     const QuadratureOptions& opts) {
  const double r = std::abs(coin.c());
  for (double sp : splits) {
    if (!(std::abs(sp) < r)) throw Error(ErrorCode::InvalidArgument, "split outside the support");
  }
  return quad_support_interval(f, r, -r, r, splits, opts);
}

std::vector<double> cumulative_angle_integrals(const RealFunction& g, double radius,
                                               std::span<const double> points,
                                               std::span<const double> splits,
                                               const QuadratureOptions& opts) {
  std::vector<double> out(points.size());
  CompensatedSum running;
  double prev = -radius;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i] < points[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "cumulative integrals need ascending points");
    }
    const double x = std::clamp(points[i], -radius, radius);
    if (x > prev) {
      running.add(quad_angle_interval(g, radius, prev, x, splits, opts));
      prev = x;
    }
    out[i] = running.value();
  }
  return out;
}

std::vector<double> cumulative_integrals(const RealFunction& f, double radius,
                                         std::span<const double> points,
                                         std::span<const double> splits,
                                         const QuadratureOptions& opts) {
  return cumulative_angle_integrals(to_angle(f, radius), radius, points, splits, opts);
}

double riemann_midpoint_angle(const RealFunction& g, std::size_t points) {
  if (points == 0) throw Error(ErrorCode::InvalidArgument, "riemann_midpoint needs points > 0");
  const double h = pi / static_cast<double>(points);
  CompensatedSum sum;
  for (std::size_t i = 0; i < points; ++i) {
    const double u = -0.5 * pi + (static_cast<double>(i) + 0.5) * h;
    const double v = g(u);
    check_finite(v, u);
    sum.add(v);
  }
  return sum.value() * h;
}

double riemann_midpoint(const RealFunction& f, double radius, std::size_t points) {
  return riemann_midpoint_angle(to_angle(f, radius), points);
}

}  // namespace qwalk
