#include <algorithm>
#include <chrono>
#include <cmath>

#include "qwalk/analysis.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numeric.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

double empirical_moment(const ProbabilityDistribution& dist, int r) {
  if (dist.time < 1) throw Error(ErrorCode::InvalidArgument, "empirical_moment needs t >= 1");
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  const double t = static_cast<double>(dist.time);
  CompensatedSum sum;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    sum.add(std::pow(static_cast<double>(dist.positions[i]) / t, r) * dist.probs[i]);
  }
  return sum.value();
}

double analytic_moment(const LimitDensity& density, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
  const double c = density.support();
  return quad_angle_interval([&](double u) { return std::pow(c * std::sin(u), r) * density.in_angle(u); },
                             c, -c, c, density.interior_splits());
}

std::vector<double> analytic_cdf_batch(const LimitDensity& density, const std::vector<double>& points) {
  return cumulative_angle_integrals([&](double u) { return density.in_angle(u); }, density.support(),
                                    points, density.interior_splits());
}

double kolmogorov_distance(const ProbabilityDistribution& dist, const LimitDensity& density) {
  if (dist.time < 1) throw Error(ErrorCode::InvalidArgument, "kolmogorov_distance needs t >= 1");
  const double t = static_cast<double>(dist.time);
  std::vector<double> points;
  std::vector<double> empirical;
  points.reserve(dist.positions.size() + 1);
  empirical.reserve(dist.positions.size() + 1);
  CompensatedSum below;
  for (std::size_t i = 0; i < dist.positions.size(); ++i) {
    points.push_back((static_cast<double>(dist.positions[i]) - 0.5) / t);
    empirical.push_back(below.value());
    below.add(dist.probs[i]);
  }
  if (!dist.positions.empty()) {
    points.push_back((static_cast<double>(dist.positions.back()) + 0.5) / t);
    empirical.push_back(below.value());
  }
  const std::vector<double> analytic = analytic_cdf_batch(density, points);
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, std::abs(empirical[i] - analytic[i]));
  }
  return std::min(worst, 1.0);
}

ConvergenceReport run_convergence(const InitialSpec& spec, const CoinOperator& coin, std::int64_t t,
                                  const std::vector<int>& orders, std::size_t window_cap) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "run_convergence needs t >= 1");
  const auto start = std::chrono::steady_clock::now();
  const LimitDensity density = LimitDensity::for_spec(spec, coin);
  const WalkState s0 = build(spec, window_cap);
  const WalkState st = evolve(s0, coin, t, window_cap);
  const ProbabilityDistribution dist = distribution(st);

  ConvergenceReport report;
  report.case_name = describe(spec.kind);
  report.xi = coin.xi();
  report.theta = coin.theta();
  report.alpha = spec.phi.alpha;
  report.beta = spec.phi.beta;
  report.t = t;
  report.truncated_mass = s0.truncated_mass();
  report.kolmogorov = kolmogorov_distance(dist, density);
  for (int r : orders) {
    MomentReport m;
    m.r = r;
    m.t = t;
    m.empirical = empirical_moment(dist, r);
    m.analytic = analytic_moment(density, r);
    m.abs_error = std::abs(m.empirical - m.analytic);
    report.moments.push_back(m);
  }
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace qwalk
