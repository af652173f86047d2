// Acceptance suite: one PASS/FAIL line per criterion on stdout, details on
// stderr. Exits nonzero if any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/fourier_oracle.hpp"
#include "qwalk/initial_states.hpp"
#include "qwalk/limit_densities.hpp"
#include "qwalk/quadrature.hpp"
#include "qwalk/simd/kernels.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);
const SpinVector kPhi{Complex(kR2, 0.0), Complex(0.0, kR2)};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string summary;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void detail(const std::string& line) { std::fprintf(stderr, "    %s\n", line.c_str()); }

// Runs jobs 0..n-1 across the available cores; results stay in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& job) {
  std::vector<T> out(n);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = job(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int bit() { return std::uniform_int_distribution<int>(0, 1)(rng_); }
  double theta_in_quadrant(int k, double margin = 0.05) {
    return k * pi / 2 + uniform(margin, pi / 2 - margin);
  }
  double theta() { return theta_in_quadrant(std::uniform_int_distribution<int>(0, 3)(rng_)); }
  SpinVector spin() {
    Complex a(normal(), normal()), b(normal(), normal());
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
  }
  WalkState state(int radius) {
    std::vector<Spinor> amps(static_cast<std::size_t>(2 * radius + 1));
    double total = 0.0;
    for (auto& s : amps) {
      s = {{normal(), normal()}, {normal(), normal()}};
      total += s.norm2();
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& s : amps) s = {s.up * scale, s.down * scale};
    return WalkState(std::move(amps), radius, 0);
  }

 private:
  std::mt19937_64 rng_;
};

const std::vector<InitialKind>& five_cases() {
  static const std::vector<InitialKind> k{kinds::Case1{0.5}, kinds::Case2{}, kinds::Case3{}, kinds::Case4{},
                                          kinds::Case5{50}};
  return k;
}

// ---------------------------------------------------------------------------

Outcome unitarity() {
  const auto start = Clock::now();
  Rng rng(1001);
  std::vector<CoinOperator> coins;
  for (int i = 0; i < 200; ++i) coins.push_back(make_coin(rng.bit(), rng.theta()));
  std::vector<WalkState> states;
  for (int i = 0; i < 100; ++i) states.push_back(rng.state(50));

  const auto step_drift = parallel_map<double>(coins.size(), [&](std::size_t i) {
    double worst = 0.0;
    for (const auto& s : states) {
      const double before = s.total_probability();
      worst = std::max(worst, std::abs(step(s, coins[i]).total_probability() - before));
    }
    return worst;
  });
  const double per_step = *std::max_element(step_drift.begin(), step_drift.end());

  // 200 (coin, state) pairs: coin i with state i mod 100.
  const auto long_drift = parallel_map<double>(coins.size(), [&](std::size_t i) {
    const WalkState& s = states[i % states.size()];
    return std::abs(evolve(s, coins[i], 5000).total_probability() - s.total_probability());
  });
  const double cumulative = *std::max_element(long_drift.begin(), long_drift.end());
  const double secs = seconds_since(start);

  Outcome o;
  o.pass = per_step < 1e-14 && cumulative < 1e-10 && secs < 60.0;
  o.summary = fmt("max per-step drift %.2e (< 1e-14), max 5000-step drift %.2e (< 1e-10), %.1f s (< 60 s), kernels %s",
                  per_step, cumulative, secs, std::string(simd::backend_name(simd::active_backend())).c_str());
  return o;
}

Outcome hand_oracle() {
  const auto h = make_coin(0, pi / 4);
  double worst = 0.0;
  bool support_ok = true;
  for (const SpinVector& phi : {SpinVector{1.0, 0.0}, SpinVector{0.0, 1.0}, kPhi}) {
    const WalkState s0 = WalkState::localized({phi.alpha, phi.beta});
    const auto d1 = distribution(evolve(s0, h, 1));
    const auto d2 = distribution(evolve(s0, h, 2));
    support_ok = support_ok && d1.positions == std::vector<std::int64_t>{-1, 1} &&
                 d2.positions == std::vector<std::int64_t>{-2, 0, 2};
    if (!support_ok) break;
    for (double p : d1.probs) worst = std::max(worst, std::abs(p - 0.5));
    worst = std::max({worst, std::abs(d2.probs[0] - 0.25), std::abs(d2.probs[1] - 0.5), std::abs(d2.probs[2] - 0.25)});
  }
  Outcome o;
  o.pass = support_ok && worst <= 1e-15;
  o.summary = fmt("Hadamard t=1 {+-1: 1/2}, t=2 {-2: 1/4, 0: 1/2, 2: 1/4} for three spins; max error %.2e (<= 1e-15)",
                  worst);
  return o;
}

double max_amplitude_error(const WalkState& a, const WalkState& b) {
  double worst = 0.0;
  for (auto x = std::min(a.x_min(), b.x_min()); x <= std::max(a.x_max(), b.x_max()); ++x) {
    const Spinor p = a.at(x), q = b.at(x);
    worst = std::max({worst, std::abs(p.up - q.up), std::abs(p.down - q.down)});
  }
  return worst;
}

Outcome fourier_equivalence() {
  const auto start = Clock::now();
  struct Job {
    InitialKind kind;
    CoinOperator coin;
  };
  std::vector<Job> jobs;
  Rng rng(1003);
  for (const auto& kind : five_cases()) {
    for (int xi : {0, 1}) {
      jobs.push_back({kind, make_coin(xi, pi / 4)});
      jobs.push_back({kind, make_coin(xi, rng.theta())});
    }
  }
  const auto errs = parallel_map<double>(jobs.size(), [&](std::size_t i) {
    const InitialSpec spec{jobs[i].kind, kPhi, TruncationPolicy::fixed_radius(200)};
    const WalkState s0 = build(spec);
    double worst = 0.0;
    for (std::int64_t t : {1, 10, 100}) {
      worst = std::max(worst, max_amplitude_error(evolve(s0, jobs[i].coin, t),
                                                  fourier_oracle(spec, jobs[i].coin, t, minimal_k_grid(spec, t))));
    }
    return worst;
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    worst = std::max(worst, errs[i]);
    if (i % 2 == 0) {
      detail(fmt("%-12s xi=%d: max amplitude error %.2e", describe(jobs[i].kind).c_str(), jobs[i].coin.xi(),
                 std::max(errs[i], errs[i + 1])));
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = worst < 1e-8 && secs < 120.0;
  o.summary = fmt("5 cases x 2 xi x 2 theta at t in {1,10,100}: max amplitude error %.2e (< 1e-8), %.1f s (< 120 s)",
                  worst, secs);
  return o;
}

// Brute-force reference: midpoint sum with `points` cells in total, split at
// the angles of the interior singular points. On each panel the angle is
// u = m + w sin(v), v midpoint-sampled, so the Jacobian w cos(v) vanishes at
// the panel ends and absorbs their logarithmic singularities.
double riemann_oracle(const LimitDensity& d, std::size_t points) {
  std::vector<double> edges{-pi / 2};
  for (double x : d.interior_splits()) edges.push_back(std::asin(x / d.support()));
  edges.push_back(pi / 2);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double m = 0.5 * (edges[p] + edges[p + 1]), w = 0.5 * (edges[p + 1] - edges[p]);
    const auto n = static_cast<std::size_t>(static_cast<double>(points) * w / (pi / 2) / 2.0);
    const double h = pi / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = -pi / 2 + (static_cast<double>(i) + 0.5) * h;
      acc += d.in_angle(m + w * std::sin(v)) * w * std::cos(v);
    }
    total += acc * h;
  }
  return total;
}

// The plain midpoint sum in the angle variable, reported for comparison.
double plain_midpoint(const LimitDensity& d, std::size_t points) {
  return riemann_midpoint_angle([&](double u) { return d.in_angle(u); }, points);
}

Outcome normalization() {
  const auto start = Clock::now();
  struct Job {
    InitialKind kind;
    CoinOperator coin;
    SpinVector phi;
    bool oracle;
  };
  std::vector<Job> jobs;
  Rng rng(1004);
  for (const auto& kind : five_cases()) {
    for (int xi : {0, 1}) {
      for (int i = 0; i < 20; ++i) {
        // Five draws per quadrant; the first draw in quadrants 0 and 2 also
        // runs the Riemann reference.
        const int quadrant = i % 4;
        jobs.push_back({kind, make_coin(xi, rng.theta_in_quadrant(quadrant)), rng.spin(), i < 4 && quadrant % 2 == 0});
      }
    }
  }
  struct Result {
    double quad = 0, oracle = 0, plain = 0;
  };
  const auto res = parallel_map<Result>(jobs.size(), [&](std::size_t i) {
    const auto d = LimitDensity::closed_form(DensityParams(jobs[i].coin, jobs[i].phi), jobs[i].kind);
    Result r;
    r.quad = analytic_moment(d, 0);
    if (jobs[i].oracle) {
      r.oracle = riemann_oracle(d, 10'000'000);
      r.plain = plain_midpoint(d, 10'000'000);
    }
    return r;
  });
  double worst_norm = 0.0, worst_oracle = 0.0;
  int oracles = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    worst_norm = std::max(worst_norm, std::abs(res[i].quad - 1.0));
    if (jobs[i].oracle) {
      ++oracles;
      worst_oracle = std::max(worst_oracle, std::abs(res[i].quad - res[i].oracle));
      detail(fmt("%-12s xi=%d theta=%.4f: |quad-1| %.2e, |quad-riemann| %.2e, |quad-plain midpoint| %.2e",
                 describe(jobs[i].kind).c_str(), jobs[i].coin.xi(), jobs[i].coin.theta(), std::abs(res[i].quad - 1.0),
                 std::abs(res[i].quad - res[i].oracle), std::abs(res[i].quad - res[i].plain)));
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = worst_norm < 1e-6 && worst_oracle < 1e-6 && secs < 300.0;
  o.summary = fmt("%zu densities: max |integral - 1| %.2e (< 1e-6); %d checked against 1e7-point Riemann sums, max gap %.2e "
                  "(< 1e-6), %.1f s (< 300 s)",
                  jobs.size(), worst_norm, oracles, worst_oracle, secs);
  return o;
}

Outcome general_specialized() {
  Rng rng(1005);
  double worst = 0.0;
  for (const auto& kind : five_cases()) {
    const auto F = momentum_profile(kind);
    double case_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DensityParams p(make_coin(rng.bit(), rng.theta()), rng.spin());
      const double x = rng.uniform(-1.0, 1.0) * p.support();
      case_worst = std::max(case_worst, std::abs(density_general(x, F, p) - density_specialized(x, F, p)));
    }
    detail(fmt("%-12s max |general - specialized| %.2e", describe(kind).c_str(), case_worst));
    worst = std::max(worst, case_worst);
  }
  Outcome o;
  o.pass = worst < 1e-9;
  o.summary = fmt("5 cases x 1000 random (coin, spin, x): max |general - specialized| %.2e (< 1e-9)", worst);
  return o;
}

Outcome reductions() {
  Rng rng(1006);
  const MomentumProfile one = [](double) { return Complex(1.0, 0.0); };
  const auto F1 = momentum_profile(kinds::Case1{0.5});
  double worst_c1 = 0.0, worst_c5 = 0.0, worst_g5 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto coin = make_coin(rng.bit(), rng.theta());
    const DensityParams p(coin, rng.spin());
    const auto localized = LimitDensity::general(p, one);
    const auto c1 = LimitDensity::specialized(p, F1);
    const auto c1_closed = LimitDensity::closed_form(p, kinds::Case1{rng.uniform(0.05, 0.95)});
    const auto c5 = LimitDensity::closed_form(p, kinds::Case5{0});
    for (int j = 0; j < 50; ++j) {
      const double x = rng.uniform(-1.0, 1.0) * p.support();
      const double ref = localized(x);
      const double scale = std::max(1.0, std::abs(ref));
      worst_c1 = std::max({worst_c1, std::abs(c1(x) - ref) / scale, std::abs(c1_closed(x) - ref) / scale});
      worst_c5 = std::max(worst_c5, std::abs(c5(x) - ref) / scale);
      worst_g5 = std::max(worst_g5, std::abs(g_case5(x, coin, 0) - 1.0));
    }
  }
  Outcome o;
  o.pass = worst_c1 <= 1e-12 && worst_c5 <= 1e-12 && worst_g5 == 0.0;
  o.summary = fmt("vs F=1 density at 10^4 points (error relative to max(1, density)): Case 1 %.2e, Case 5 n=0 %.2e "
                  "(<= 1e-12); max |g5 - 1| at n=0 %.2e (== 0)",
                  worst_c1, worst_c5, worst_g5);
  return o;
}

struct Panel {
  InitialKind kind;
  int xi;
  std::int64_t t;
};

std::vector<Panel> figure_panels() {
  std::vector<Panel> panels;
  for (const auto& kind : {InitialKind{kinds::Case1{0.5}}, InitialKind{kinds::Case2{}}, InitialKind{kinds::Case3{}},
                           InitialKind{kinds::Case4{}}}) {
    for (int xi : {0, 1}) panels.push_back({kind, xi, 5000});
  }
  panels.push_back({kinds::Case5{50}, 0, 1000});
  return panels;
}

std::vector<std::string> figure_reports(std::vector<ConvergenceReport>* out = nullptr) {
  const auto panels = figure_panels();
  const auto reports = parallel_map<ConvergenceReport>(panels.size(), [&](std::size_t i) {
    const InitialSpec spec{panels[i].kind, kPhi, TruncationPolicy::fixed_radius(panels[i].t)};
    return run_convergence(spec, make_coin(panels[i].xi, pi / 4), panels[i].t, {1, 2, 3, 4});
  });
  std::vector<std::string> json;
  for (const auto& r : reports) json.push_back(to_json(r, false));
  if (out) *out = reports;
  return json;
}

std::vector<std::string> g_first_reports;

Outcome figures() {
  const auto start = Clock::now();
  std::vector<ConvergenceReport> reports;
  g_first_reports = figure_reports(&reports);
  const double secs = seconds_since(start);
  int failing = 0;
  double worst_ks = 0.0, worst_moment = 0.0;
  std::string red;
  for (const auto& r : reports) {
    double m = 0.0;
    for (const auto& mr : r.moments) m = std::max(m, mr.abs_error);
    const bool ok = r.kolmogorov < 0.05 && m < 0.02;
    detail(fmt("%s %-12s xi=%d t=%lld: Kolmogorov %.4f (< 0.05), max moment error %.4f (< 0.02)", ok ? "ok  " : "FAIL",
               r.case_name.c_str(), r.xi, static_cast<long long>(r.t), r.kolmogorov, m));
    if (!ok) {
      ++failing;
      red += (red.empty() ? "" : ", ") + r.case_name + " xi=" + std::to_string(r.xi);
    }
    worst_ks = std::max(worst_ks, r.kolmogorov);
    worst_moment = std::max(worst_moment, m);
  }
  Outcome o;
  o.pass = failing == 0 && secs < 600.0;
  o.summary = fmt("%zu runs, %d over budget%s%s%s; max Kolmogorov %.4f, max moment error %.4f, %.1f s (< 600 s)",
                  reports.size(), failing, failing ? " (" : "", red.c_str(), failing ? ")" : "", worst_ks,
                  worst_moment, secs);
  return o;
}

Outcome second_moment() {
  const auto coin = make_coin(0, pi / 4);
  const auto d = LimitDensity::closed_form(DensityParams(coin, kPhi), kinds::Localized{});
  const double target = 1.0 - kR2;
  const double quad = analytic_moment(d, 2);
  const double c = d.support();
  const double riemann = riemann_midpoint_angle(
      [&](double u) {
        const double x = c * std::sin(u);
        return x * x * d.in_angle(u);
      },
      10'000'000);
  const auto dist = distribution(evolve(WalkState::localized({kPhi.alpha, kPhi.beta}), coin, 5000));
  const double emp = empirical_moment(dist, 2);
  Outcome o;
  o.pass = std::abs(quad - target) < 1e-8 && std::abs(riemann - quad) < 1e-8 && std::abs(emp - target) < 0.01;
  o.summary = fmt("quadrature %.12f vs 1-1/sqrt2 %.12f (|diff| %.1e), Riemann 1e7 |diff| %.1e; empirical t=5000 %.6f "
                  "(|diff| %.4f < 0.01)",
                  quad, target, std::abs(quad - target), std::abs(riemann - quad), emp, std::abs(emp - target));
  return o;
}

Outcome discontinuity() {
  const auto c3 = LimitDensity::closed_form(DensityParams(make_coin(0, pi / 4), kPhi), kinds::Case3{});
  const auto c4 = LimitDensity::closed_form(DensityParams(make_coin(1, pi / 4), kPhi), kinds::Case4{});
  const double d = 1e-6;
  const double jump3 = std::abs(c3(d) - c3(-d));
  const double jump4 = std::abs(c4(d) - c4(-d));
  const double r = c3.support();
  const double edge3 = std::max(c3(r - d), c3(-(r - d)));
  detail(fmt("case3 xi=0: density(+-1e-6) = %.6f, %.6f (divergent at 0, even in x)", c3(d), c3(-d)));
  detail(fmt("case4 xi=1: density(+-1e-6) = %.6f, %.6f", c4(d), c4(-d)));
  Outcome o;
  o.pass = jump3 > 0.01 && jump4 > 0.01 && edge3 < 0.05;
  o.summary = fmt("jump at 0: Case 3 xi=0 %.2e, Case 4 xi=1 %.4f (> 0.01); Case 3 xi=0 density at +-(|c|-1e-6) %.2e "
                  "(< 0.05)",
                  jump3, jump4, edge3);
  return o;
}

Outcome determinism() {
  if (g_first_reports.empty()) g_first_reports = figure_reports();
  const auto second = figure_reports();
  std::size_t same = 0;
  for (std::size_t i = 0; i < second.size(); ++i) same += second[i] == g_first_reports[i];
  Outcome o;
  o.pass = same == second.size() && !second.empty();
  o.summary = fmt("%zu of %zu figure reports byte-identical across runs (runtime_ms omitted)", same, second.size());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "unitarity", unitarity},
      {2, "hand oracle", hand_oracle},
      {3, "Fourier oracle", fourier_equivalence},
      {4, "density normalization", normalization},
      {5, "general/specialized identity", general_specialized},
      {6, "Case 1 and Case 5 n=0 reduction", reductions},
      {7, "figure reproduction", figures},
      {8, "second moment", second_moment},
      {9, "discontinuity fidelity", discontinuity},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
