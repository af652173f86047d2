#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/initial_states.hpp"
#include "qwalk/limit_densities.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// sum_x (x/t)^r p(x). Throws InvalidArgument if dist.time < 1 or r < 0.
double empirical_moment(const ProbabilityDistribution& dist, int r);

/// Integral of x^r density(x) over the support.
double analytic_moment(const LimitDensity& density, int r);

/// Analytic CDF at ascending points, each gap integrated once.
std::vector<double> analytic_cdf_batch(const LimitDensity& density, const std::vector<double>& points);

/// sup over x in {(x_i - 1/2)/t} and (x_max + 1/2)/t of
/// |P(X_t/t <= x) - CDF(x)|.
double kolmogorov_distance(const ProbabilityDistribution& dist, const LimitDensity& density);

struct MomentReport {
  int r = 0;
  double empirical = 0.0;
  double analytic = 0.0;
  double abs_error = 0.0;
  std::int64_t t = 0;
};

struct ConvergenceReport {
  std::string case_name;
  int xi = 0;
  double theta = 0.0;
  Complex alpha;
  Complex beta;
  std::int64_t t = 0;
  double kolmogorov = 0.0;
  std::vector<MomentReport> moments;
  double truncated_mass = 0.0;
  std::int64_t runtime_ms = 0;
};

/// Builds the initial state, evolves it t steps and compares the rescaled
/// position law with the limit density. Throws InvalidArgument for t < 1.
ConvergenceReport run_convergence(const InitialSpec& spec, const CoinOperator& coin, std::int64_t t,
                                  const std::vector<int>& orders,
                                  std::size_t window_cap = kDefaultWindowCap);

/// Decimal form with 17 significant digits (round-trips any double);
/// non-finite values print as inf, -inf, nan.
std::string format_double(double v);

/// format_double for finite values, null otherwise.
std::string json_number(double v);

/// One-line JSON object with keys case, xi, theta, alpha, beta, t,
/// kolmogorov, moments, truncated_mass and, if include_timing, runtime_ms.
std::string to_json(const ConvergenceReport& report, bool include_timing = true);

}  // namespace qwalk
