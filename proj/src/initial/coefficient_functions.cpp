#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/initial_states.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

// Representative of k in [lo, lo + 2pi).
double wrap_from(double k, double lo) {
  double r = std::fmod(k - lo, 2.0 * pi);
  if (r < 0) r += 2.0 * pi;
  return lo + r;
}

double wrap(double k) { return wrap_from(k, -pi); }

double zero(double) { return 0.0; }

std::vector<double> edges_only() { return {-pi, pi}; }
std::vector<double> quarter_edges() { return {-pi, -pi / 2, pi / 2, pi}; }

// Trig-polynomial grid large enough that the midpoint sum of w1^2 + w2^2 is exact.
double case5_w(int n) {
  const auto f = coefficient_functions(kinds::Case5{n});
  const int m = 8 * (n + 2);
  const double dk = 2.0 * pi / m;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double k = -pi + (i + 0.5) * dk;
    const double a = f.w1(k), b = f.w2(k);
    total += a * a + b * b;
  }
  return total * dk;
}

}  // namespace

CoefficientFunctions coefficient_functions(const InitialKind& kind) {
  return std::visit(
      [](const auto& k) -> CoefficientFunctions {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Localized>) {
          return {[](double) { return 1.0; }, zero, edges_only()};
        } else if constexpr (std::is_same_v<K, kinds::Case1>) {
          const double a = k.a;
          return {[a](double q) { return std::cos(a * wrap(q)); },
                  [a](double q) { return std::sin(a * wrap(q)); }, edges_only()};
        } else if constexpr (std::is_same_v<K, kinds::Case2>) {
          return {[](double q) {
                    const double c = std::cos(q);
                    return std::log(4.0 * c * c);
                  },
                  zero, quarter_edges()};
        } else if constexpr (std::is_same_v<K, kinds::Case3>) {
          // Defined on (-pi/2, 3pi/2) and periodically extended.
          return {[](double q) {
                    const double r = wrap_from(q, -pi / 2);
                    return 0.5 * std::log(1.0 / std::tan(std::abs(r / 2 - pi / 4)));
                  },
                  zero, quarter_edges()};
        } else if constexpr (std::is_same_v<K, kinds::Case4>) {
          return {[](double q) {
                    const double r = wrap(q);
                    if (r < -pi / 2) return 0.0;
                    if (r <= pi / 2) return std::sin(r) + 1.0;
                    return 2.0;
                  },
                  zero, quarter_edges()};
        } else if constexpr (std::is_same_v<K, kinds::Case5>) {
          const int n = k.n;
          const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
          return {[n](double q) {
                    return std::pow(std::cos(q), 2 * n + 2) + std::pow(std::sin(q), 2 * n + 2);
                  },
                  [n, sgn](double q) {
                    const double c = std::cos(q), s = std::sin(q);
                    return sgn * (c * std::pow(s, 2 * n + 1) - s * std::pow(c, 2 * n + 1));
                  },
                  edges_only()};
        } else {
          const kinds::Generic g = k;
          return {[g](double q) { return g.w1(q); }, [g](double q) { return g.w2(q); },
                  edges_only()};
        }
      },
      kind);
}

double normalization_constant(const InitialKind& kind) {
  return std::visit(
      [&kind](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Localized> || std::is_same_v<K, kinds::Case1>) {
          return 2.0 * pi;
        } else if constexpr (std::is_same_v<K, kinds::Case2>) {
          return 2.0 * pi * pi * pi / 3.0;
        } else if constexpr (std::is_same_v<K, kinds::Case3>) {
          return pi * pi * pi / 8.0;
        } else if constexpr (std::is_same_v<K, kinds::Case4>) {
          return 3.5 * pi;
        } else if constexpr (std::is_same_v<K, kinds::Case5>) {
          return case5_w(k.n);
        } else {
          const auto f = coefficient_functions(kind);
          if (k.w1.sampled() && k.w2.sampled() && k.w1.samples().size() == k.w2.samples().size()) {
            const auto a = k.w1.samples(), b = k.w2.samples();
            double total = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * a[i] + b[i] * b[i];
            return total * 2.0 * pi / static_cast<double>(a.size());
          }
          auto sq = [&f](double q) {
            const double a = f.w1(q), b = f.w2(q);
            return a * a + b * b;
          };
          return periodic_integral(sq, 1 << 16, f.breakpoints);
        }
      },
      kind);
}

std::function<Complex(double)> momentum_profile(const InitialKind& kind) {
  const double w = normalization_constant(kind);
  if (!(w > 0.0)) throw Error(ErrorCode::NotNormalizable, "W(w1, w2) must be positive");
  const double scale = std::sqrt(2.0 * pi / w);
  auto f = coefficient_functions(kind);
  return [f = std::move(f), scale](double k) { return scale * Complex(f.w1(k), f.w2(k)); };
}

namespace {

// Sigmoid s -> s^4 (35 - 84 s + 70 s^2 - 20 s^3) and its derivative
// 140 s^3 (1 - s)^3. Endpoint singularities are damped by s^3.
struct PanelRule {
  std::vector<double> t;  // mapped abscissae in [0, 1]
  std::vector<double> w;  // weights, summing to 1
};

PanelRule panel_rule(int n) {
  PanelRule rule;
  rule.t.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    const double s2 = s * s;
    rule.t[static_cast<std::size_t>(i)] = s2 * s2 * (35.0 - 84.0 * s + 70.0 * s2 - 20.0 * s2 * s);
    const double u = s * (1.0 - s);
    rule.w[static_cast<std::size_t>(i)] = 140.0 * u * u * u / n;
  }
  return rule;
}

std::vector<double> panel_edges(std::span<const double> breakpoints) {
  std::vector<double> edges(breakpoints.begin(), breakpoints.end());
  if (edges.size() < 2) edges = edges_only();
  return edges;
}

template <class Accumulate>
void for_each_node(int quadrature_points, std::span<const double> breakpoints, Accumulate&& acc) {
  if (quadrature_points < 64) {
    throw Error(ErrorCode::InvalidArgument, "quadrature_points must be at least 64");
  }
  const auto edges = panel_edges(breakpoints);
  const int panels = static_cast<int>(edges.size()) - 1;
  const auto rule = panel_rule(std::max(16, quadrature_points / panels));
  for (int p = 0; p < panels; ++p) {
    const double a = edges[static_cast<std::size_t>(p)];
    const double width = edges[static_cast<std::size_t>(p) + 1] - a;
    const double b = edges[static_cast<std::size_t>(p) + 1];
    for (std::size_t i = 0; i < rule.t.size(); ++i) {
      // Nodes that round onto an edge would evaluate a singular w there; their
      // weight is below 1e-30 of the panel, so they are dropped.
      const double k = a + width * rule.t[i];
      if (k <= a || k >= b) continue;
      acc(k, width * rule.w[i]);
    }
  }
}

}  // namespace

Complex generic_d(const std::function<double(double)>& w1, const std::function<double(double)>& w2,
                  std::int64_t x, int quadrature_points, std::span<const double> breakpoints) {
  double re = 0.0, im = 0.0;
  const double xd = static_cast<double>(x);
  for_each_node(quadrature_points, breakpoints, [&](double k, double weight) {
    const double c = std::cos(k * xd), s = std::sin(k * xd);
    const double a = w1(k), b = w2(k);
    // (a + i b)(c + i s)
    re += weight * (a * c - b * s);
    im += weight * (a * s + b * c);
  });
  return Complex(re, im) / std::sqrt(2.0 * pi);
}

double periodic_integral(const std::function<double(double)>& w, int quadrature_points,
                         std::span<const double> breakpoints) {
  double total = 0.0;
  for_each_node(quadrature_points, breakpoints,
                [&](double k, double weight) { total += weight * w(k); });
  return total;
}

}  // namespace qwalk
