#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/limit_densities.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk::cli {
namespace {

const std::vector<int> kMomentOrders{0, 1, 2, 3, 4};

template <typename T>
const T& single(const std::vector<T>& values, const char* field) {
  if (values.size() != 1) throw ConfigError(std::string(field) + ": expects exactly one value for this command");
  return values.front();
}

bool numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::GridTooSmall:
    case ErrorCode::ResourceLimit:
    case ErrorCode::OutOfSupport:
    case ErrorCode::NotNormalizable:
      return true;
    default:
      return false;
  }
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format: expected csv or json");
}

}  // namespace

void write_output(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("out: cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("out: write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("out: cannot move output into place: " + ec.message());
  }
}

int cmd_simulate(const RunConfig& cfg) {
  check_format(cfg);
  const std::int64_t t = single(cfg.steps, "steps");
  const InitialSpec spec = make_spec(cfg, single(cfg.cases, "case"), t);
  const CoinOperator coin = make_coin_checked(single(cfg.xis, "xi"), single(cfg.thetas, "theta"));
  const ProbabilityDistribution dist = distribution(evolve(build(spec), coin, t));
  const double scale = static_cast<double>(std::max<std::int64_t>(t, 1));

  std::string out;
  out.reserve(dist.probs.size() * 64);
  if (cfg.format == "csv") {
    out += "x,x_over_t,p\n";
  } else {
    out += "{\"t\":" + std::to_string(t) + ",\"rows\":[";
  }
  bool first = true;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (!(dist.probs[i] > 0.0)) continue;
    const std::int64_t x = dist.positions[i];
    const std::string xt = format_double(static_cast<double>(x) / scale);
    if (cfg.format == "csv") {
      out += std::to_string(x) + ',' + xt + ',' + format_double(dist.probs[i]) + '\n';
    } else {
      if (!first) out += ',';
      out += "{\"x\":" + std::to_string(x) + ",\"x_over_t\":" + xt + ",\"p\":" + json_number(dist.probs[i]) + '}';
    }
    first = false;
  }
  if (cfg.format == "json") out += "]}\n";
  write_output(cfg.out, out);
  return kOk;
}

int cmd_density(const RunConfig& cfg) {
  check_format(cfg);
  if (cfg.grid < 1) throw ConfigError("grid: must be at least 1");
  const InitialSpec spec = make_spec(cfg, single(cfg.cases, "case"), single(cfg.steps, "steps"));
  const CoinOperator coin = make_coin_checked(single(cfg.xis, "xi"), single(cfg.thetas, "theta"));
  LimitDensity density = [&] {
    try {
      return LimitDensity::for_spec(spec, coin);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateTheta) throw ConfigError(std::string("theta: ") + e.what());
      throw;
    }
  }();
  const double r = density.support();
  const double delta = 2.0 * r / (10.0 * cfg.grid);
  const double lo = -r + delta, hi = r - delta;

  std::string out = cfg.format == "csv" ? "x,density\n" : "{\"rows\":[";
  for (int i = 0; i < cfg.grid; ++i) {
    const double x = cfg.grid == 1 ? 0.0 : lo + (hi - lo) * i / (cfg.grid - 1);
    const double d = density(x);
    if (cfg.format == "csv") {
      out += format_double(x) + ',' + format_double(d) + '\n';
    } else {
      if (i) out += ',';
      out += "{\"x\":" + json_number(x) + ",\"density\":" + json_number(d) + '}';
    }
  }
  if (cfg.format == "json") out += "]}\n";
  write_output(cfg.out, out);
  return kOk;
}

int cmd_compare(const RunConfig& cfg) {
  const std::int64_t t = single(cfg.steps, "steps");
  if (t < 1) throw ConfigError("steps: compare needs at least one step");
  const InitialSpec spec = make_spec(cfg, single(cfg.cases, "case"), t);
  const CoinOperator coin = make_coin_checked(single(cfg.xis, "xi"), single(cfg.thetas, "theta"));
  if (std::abs(coin.s()) < 1e-12) throw ConfigError("theta: DegenerateTheta: sin(theta) = 0 leaves no limit density");
  const ConvergenceReport report = run_convergence(spec, coin, t, kMomentOrders);
  write_output(cfg.out, to_json(report, cfg.timing) + "\n");
  return report.kolmogorov < cfg.threshold ? kOk : kNotConverged;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.cases.empty()) throw ConfigError("case: empty range");
  if (cfg.xis.empty()) throw ConfigError("xi: empty range");
  if (cfg.thetas.empty()) throw ConfigError("theta: empty range");
  if (cfg.steps.empty()) throw ConfigError("steps: empty range");

  auto cases = cfg.cases;
  auto xis = cfg.xis;
  auto thetas = cfg.thetas;
  auto steps = cfg.steps;
  std::sort(cases.begin(), cases.end());
  std::sort(xis.begin(), xis.end());
  std::sort(thetas.begin(), thetas.end());
  std::sort(steps.begin(), steps.end());
  cases.erase(std::unique(cases.begin(), cases.end()), cases.end());
  xis.erase(std::unique(xis.begin(), xis.end()), xis.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  // Validate every field up front so that configuration mistakes exit 2
  // before any work starts.
  for (const auto& c : cases) {
    for (auto t : steps) {
      if (t < 1) throw ConfigError("steps: sweep needs at least one step");
      make_spec(cfg, c, t);
    }
  }
  for (int xi : xis) {
    for (double th : thetas) {
      const CoinOperator coin = make_coin_checked(xi, th);
      if (std::abs(coin.s()) < 1e-12) throw ConfigError("theta: DegenerateTheta: sin(theta) = 0 leaves no limit density");
    }
  }

  using Tuple = std::tuple<std::string, int, double, std::int64_t>;
  std::vector<Tuple> tuples;
  for (const auto& c : cases)
    for (int xi : xis)
      for (double th : thetas)
        for (auto t : steps) tuples.emplace_back(c, xi, th, t);

  std::vector<std::string> lines(tuples.size());
  std::vector<char> failed(tuples.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      const auto& [c, xi, th, t] = tuples[i];
      try {
        const InitialSpec spec = make_spec(cfg, c, t);
        const ConvergenceReport report = run_convergence(spec, make_coin(xi, th), t, kMomentOrders);
        lines[i] = to_json(report, cfg.timing);
      } catch (const std::exception& e) {
        std::string name = c;
        try {
          name = describe(make_spec(cfg, c, t).kind);
        } catch (...) {
        }
        lines[i] = "{\"case\":\"" + name + "\",\"xi\":" + std::to_string(xi) + ",\"theta\":" + json_number(th) +
                   ",\"t\":" + std::to_string(t) + ",\"error\":\"";
        for (char ch : std::string(e.what())) {
          if (ch == '"' || ch == '\\') lines[i] += '\\';
          lines[i] += ch;
        }
        lines[i] += "\"}";
        failed[i] = 1;
      }
    }
  };
  std::size_t n_threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, tuples.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string out;
  for (const auto& line : lines) out += line + '\n';
  write_output(cfg.out, out);
  return std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; }) ? kNumericalFailure : kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Discrete-time two-state quantum walk: simulation, limit densities and convergence checks"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> case_s, a_s, n_s, xi_s, theta_s, are_s, aim_s, bre_s, bim_s, steps_s, grid_s,
      eps_s, radius_s, threshold_s, out_s, format_s, w1_s, w2_s, threads_s, simd_s;
  bool no_timing = false;

  app.add_option("--config", config_path, "JSON file with the same keys as the long flags");
  app.add_option("--case", case_s, "localized, 1, 2, 3, 4, 5 or generic (comma list for sweep)");
  app.add_option("--a", a_s, "Case 1 parameter a (not an integer)");
  app.add_option("--n", n_s, "Case 5 parameter n >= 0");
  app.add_option("--xi", xi_s, "coin sign parameter, 0 or 1 (comma list for sweep)");
  app.add_option("--theta", theta_s, "coin angle in radians, e.g. pi/4 (comma list for sweep)");
  app.add_option("--alpha-re", are_s, "Re(alpha)");
  app.add_option("--alpha-im", aim_s, "Im(alpha)");
  app.add_option("--beta-re", bre_s, "Re(beta)");
  app.add_option("--beta-im", bim_s, "Im(beta)");
  app.add_option("--steps", steps_s, "number of time steps t (comma list for sweep)");
  app.add_option("--grid", grid_s, "density sample count");
  app.add_option("--tail-eps", eps_s, "truncate the initial state at this tail mass");
  app.add_option("--radius", radius_s, "truncate the initial state at this radius (default: steps)");
  app.add_option("--threshold", threshold_s, "compare: Kolmogorov distance needed for exit 0");
  app.add_option("--out", out_s, "output path, - for stdout");
  app.add_option("--format", format_s, "csv or json (simulate, density)");
  app.add_option("--w1-csv", w1_s, "generic case: samples of w1 (header k,w)");
  app.add_option("--w2-csv", w2_s, "generic case: samples of w2 (default zero)");
  app.add_option("--threads", threads_s, "sweep worker threads (default: all cores)");
  app.add_option("--simd", simd_s, "kernel backend: scalar, avx2 or neon");
  app.add_flag("--no-timing", no_timing, "omit runtime_ms from reports");

  for (const char* name : {"simulate", "density", "compare", "sweep"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("simulate")->description("write x,x_over_t,p for the walk after --steps steps");
  app.get_subcommand("density")->description("write x,density on --grid points of the support");
  app.get_subcommand("compare")->description("convergence report of X_t/t against the limit density");
  app.get_subcommand("sweep")->description("one convergence report per (case, xi, theta, steps) tuple");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    for (const char* name : {"simulate", "density", "compare", "sweep"}) {
      if (app.got_subcommand(name)) cfg.command = name;
    }

    auto real = [](const std::optional<std::string>& s, const char* field, double& target) {
      if (!s) return;
      try {
        target = parse_real(*s);
      } catch (const Error& e) {
        throw ConfigError(std::string(field) + ": " + e.what());
      }
    };
    auto integer = [](const std::optional<std::string>& s, const char* field) -> std::int64_t {
      double v = 0.0;
      try {
        v = parse_real(*s);
      } catch (const Error& e) {
        throw ConfigError(std::string(field) + ": " + e.what());
      }
      if (std::floor(v) != v || std::abs(v) > 9e15) throw ConfigError(std::string(field) + ": expected an integer");
      return static_cast<std::int64_t>(v);
    };
    auto integer_list = [&](const std::optional<std::string>& s, const char* field) {
      std::vector<std::int64_t> out;
      std::stringstream ss(*s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(integer(item, field));
      if (!s->empty() && s->back() == ',') throw ConfigError(std::string(field) + ": empty item in list");
      return out;
    };

    if (case_s) {
      cfg.cases.clear();
      std::stringstream ss(*case_s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ConfigError("case: empty item in list");
        cfg.cases.push_back(item);
      }
    }
    real(a_s, "a", cfg.a);
    if (n_s) cfg.n = static_cast<int>(integer(n_s, "n"));
    if (xi_s) {
      cfg.xis.clear();
      for (auto v : integer_list(xi_s, "xi")) cfg.xis.push_back(static_cast<int>(v));
    }
    if (theta_s) {
      try {
        cfg.thetas = parse_real_list(*theta_s);
      } catch (const Error& e) {
        throw ConfigError(std::string("theta: ") + e.what());
      }
    }
    real(are_s, "alpha-re", cfg.alpha_re);
    real(aim_s, "alpha-im", cfg.alpha_im);
    real(bre_s, "beta-re", cfg.beta_re);
    real(bim_s, "beta-im", cfg.beta_im);
    if (steps_s) cfg.steps = integer_list(steps_s, "steps");
    if (grid_s) cfg.grid = static_cast<int>(integer(grid_s, "grid"));
    if (eps_s) {
      double v = 0.0;
      real(eps_s, "tail-eps", v);
      cfg.tail_eps = v;
    }
    if (radius_s) cfg.radius = integer(radius_s, "radius");
    real(threshold_s, "threshold", cfg.threshold);
    if (out_s) cfg.out = *out_s;
    if (format_s) cfg.format = *format_s;
    if (w1_s) cfg.w1_csv = *w1_s;
    if (w2_s) cfg.w2_csv = *w2_s;
    if (threads_s) cfg.threads = static_cast<int>(integer(threads_s, "threads"));
    if (no_timing) cfg.timing = false;
    if (simd_s) {
      const auto backend = simd::parse_backend(*simd_s);
      if (!backend || !simd::backend_available(*backend)) throw ConfigError("simd: unavailable backend '" + *simd_s + "'");
      simd::set_active_backend(*backend);
    }

    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "density") return cmd_density(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    throw ConfigError("command: expected simulate, density, compare or sweep");
  } catch (const ConfigError& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return numerical_failure(e.code()) ? kNumericalFailure : kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "qwalk: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace qwalk::cli
