#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

namespace qwalk::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

double real_value(const json& v, const std::string& field) {
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real(v.get<std::string>());
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
  bad_field(field, "expected a number or numeric expression");
}

std::int64_t integer_value(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  bad_field(field, "expected an integer");
}

template <typename F>
void for_each_item(const json& v, F&& f) {
  if (v.is_array()) {
    for (const json& item : v) f(item);
  } else {
    f(v);
  }
}

std::string case_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<int>());
  bad_field("case", "expected a case name or number");
}

}  // namespace

RunConfig::RunConfig()
    : thetas{std::numbers::pi / 4},
      alpha_re(1.0 / std::numbers::sqrt2),
      alpha_im(0.0),
      beta_re(0.0),
      beta_im(1.0 / std::numbers::sqrt2) {}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") {
      if (!v.is_string()) bad_field(key, "expected a string");
      cfg.command = v.get<std::string>();
    } else if (key == "case") {
      cfg.cases.clear();
      for_each_item(v, [&](const json& item) { cfg.cases.push_back(case_string(item)); });
    } else if (key == "a") {
      cfg.a = real_value(v, key);
    } else if (key == "n") {
      cfg.n = static_cast<int>(integer_value(v, key));
    } else if (key == "xi") {
      cfg.xis.clear();
      for_each_item(v, [&](const json& item) { cfg.xis.push_back(static_cast<int>(integer_value(item, key))); });
    } else if (key == "theta") {
      cfg.thetas.clear();
      for_each_item(v, [&](const json& item) { cfg.thetas.push_back(real_value(item, key)); });
    } else if (key == "alpha_re") {
      cfg.alpha_re = real_value(v, key);
    } else if (key == "alpha_im") {
      cfg.alpha_im = real_value(v, key);
    } else if (key == "beta_re") {
      cfg.beta_re = real_value(v, key);
    } else if (key == "beta_im") {
      cfg.beta_im = real_value(v, key);
    } else if (key == "steps") {
      cfg.steps.clear();
      for_each_item(v, [&](const json& item) { cfg.steps.push_back(integer_value(item, key)); });
    } else if (key == "grid") {
      cfg.grid = static_cast<int>(integer_value(v, key));
    } else if (key == "tail_eps") {
      cfg.tail_eps = real_value(v, key);
    } else if (key == "radius") {
      cfg.radius = integer_value(v, key);
    } else if (key == "threshold") {
      cfg.threshold = real_value(v, key);
    } else if (key == "out" || key == "format" || key == "w1_csv" || key == "w2_csv") {
      if (!v.is_string()) bad_field(key, "expected a string");
      std::string& target = key == "out" ? cfg.out : key == "format" ? cfg.format : key == "w1_csv" ? cfg.w1_csv : cfg.w2_csv;
      target = v.get<std::string>();
    } else if (key == "timing") {
      if (!v.is_boolean()) bad_field(key, "expected true or false");
      cfg.timing = v.get<bool>();
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(integer_value(v, key));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
}

SpinVector make_phi(const RunConfig& cfg) {
  try {
    return SpinVector::make({cfg.alpha_re, cfg.alpha_im}, {cfg.beta_re, cfg.beta_im});
  } catch (const Error& e) {
    throw ConfigError(std::string("alpha/beta: ") + e.what());
  }
}

CoinOperator make_coin_checked(int xi, double theta) {
  try {
    return make_coin(xi, theta);
  } catch (const Error& e) {
    throw ConfigError(std::string(xi == 0 || xi == 1 ? "theta: " : "xi: ") + e.what());
  }
}

InitialSpec make_spec(const RunConfig& cfg, const std::string& case_name, std::int64_t steps) {
  InitialSpec spec;
  spec.phi = make_phi(cfg);
  if (case_name == "localized" || case_name == "0") {
    spec.kind = kinds::Localized{};
  } else if (case_name == "1" || case_name == "case1") {
    spec.kind = kinds::Case1{cfg.a};
    try {
      case_amplitude(spec.kind, 0);
    } catch (const Error& e) {
      throw ConfigError(std::string("a: ") + e.what());
    }
  } else if (case_name == "2" || case_name == "case2") {
    spec.kind = kinds::Case2{};
  } else if (case_name == "3" || case_name == "case3") {
    spec.kind = kinds::Case3{};
  } else if (case_name == "4" || case_name == "case4") {
    spec.kind = kinds::Case4{};
  } else if (case_name == "5" || case_name == "case5") {
    if (cfg.n < 0) throw ConfigError("n: must be a nonnegative integer");
    spec.kind = kinds::Case5{cfg.n};
  } else if (case_name == "generic") {
    if (cfg.w1_csv.empty()) throw ConfigError("w1-csv: required for case 'generic'");
    try {
      kinds::Generic g;
      g.w1 = load_samples_csv(cfg.w1_csv);
      if (cfg.w2_csv.empty()) {
        g.w2 = PeriodicFunction::from_samples(std::vector<double>(g.w1.samples().size(), 0.0));
      } else {
        g.w2 = load_samples_csv(cfg.w2_csv);
      }
      spec.kind = std::move(g);
    } catch (const Error& e) {
      throw ConfigError(std::string("w1-csv/w2-csv: ") + e.what());
    }
  } else {
    throw ConfigError("case: unknown case '" + case_name + "' (expected localized, 1, 2, 3, 4, 5 or generic)");
  }

  if (steps < 0) throw ConfigError("steps: must be nonnegative");
  if (cfg.tail_eps && cfg.radius) throw ConfigError("tail-eps/radius: give at most one");
  try {
    if (cfg.tail_eps) {
      spec.truncation = TruncationPolicy::tail_mass(*cfg.tail_eps);
    } else {
      spec.truncation = TruncationPolicy::fixed_radius(cfg.radius ? *cfg.radius : steps);
    }
  } catch (const Error& e) {
    throw ConfigError(std::string(cfg.tail_eps ? "tail-eps: " : "radius: ") + e.what());
  }
  return spec;
}

}  // namespace qwalk::cli
