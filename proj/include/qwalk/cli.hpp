#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/initial_states.hpp"

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kNotConverged = 3,
  kNumericalFailure = 4,
};

/// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real literal with optional pi, sqrt(...), *, / and unary minus:
/// "pi/4", "3*pi/4", "-0.5", "1/sqrt(2)". Throws InvalidArgument.
double parse_real(std::string_view text);

/// Comma-separated list of parse_real values.
std::vector<double> parse_real_list(std::string_view text);

struct RunConfig {
  std::string command;
  std::vector<std::string> cases{"localized"};
  double a = 0.5;
  int n = 0;
  std::vector<int> xis{0};
  std::vector<double> thetas;  // defaults to pi/4
  double alpha_re, alpha_im, beta_re, beta_im;  // default (1/sqrt2, i/sqrt2)
  std::vector<std::int64_t> steps{100};
  int grid = 201;
  std::optional<double> tail_eps;
  std::optional<std::int64_t> radius;
  double threshold = 0.05;
  std::string out = "-";
  std::string format = "csv";
  std::string w1_csv;
  std::string w2_csv;
  bool timing = true;
  int threads = 0;  // 0: hardware concurrency

  RunConfig();
};

/// Fills `cfg` from a JSON object whose keys mirror the long flag names
/// (case, a, n, xi, theta, alpha_re, ..., steps, grid, tail_eps, radius,
/// threshold, out, format, w1_csv, w2_csv, timing, threads). Scalars or
/// arrays are accepted for case, xi, theta and steps.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Initial-state description for one case name; ConfigError on bad values.
InitialSpec make_spec(const RunConfig& cfg, const std::string& case_name, std::int64_t steps);
SpinVector make_phi(const RunConfig& cfg);
CoinOperator make_coin_checked(int xi, double theta);

/// Subcommands; each writes to cfg.out and returns an exit code.
int cmd_simulate(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);

/// Writes `contents` to `path` via a temporary file and rename; "-" is stdout.
void write_output(const std::string& path, const std::string& contents);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace qwalk::cli
