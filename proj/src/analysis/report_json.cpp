#include <cmath>
#include <cstdio>
#include <string>

#include "qwalk/analysis.hpp"

namespace qwalk {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string complex_json(Complex z) {
  return "{\"re\":" + json_number(z.real()) + ",\"im\":" + json_number(z.imag()) + "}";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string to_json(const ConvergenceReport& r, bool include_timing) {
  std::string out = "{\"case\":\"" + escape(r.case_name) + "\"";
  out += ",\"xi\":" + std::to_string(r.xi);
  out += ",\"theta\":" + json_number(r.theta);
  out += ",\"alpha\":" + complex_json(r.alpha);
  out += ",\"beta\":" + complex_json(r.beta);
  out += ",\"t\":" + std::to_string(r.t);
  out += ",\"kolmogorov\":" + json_number(r.kolmogorov);
  out += ",\"moments\":[";
  for (std::size_t i = 0; i < r.moments.size(); ++i) {
    const MomentReport& m = r.moments[i];
    if (i) out += ',';
    out += "{\"r\":" + std::to_string(m.r) + ",\"empirical\":" + json_number(m.empirical) +
           ",\"analytic\":" + json_number(m.analytic) + ",\"abs_error\":" + json_number(m.abs_error) + "}";
  }
  out += "],\"truncated_mass\":" + json_number(r.truncated_mass);
  if (include_timing) out += ",\"runtime_ms\":" + std::to_string(r.runtime_ms);
  out += "}";
  return out;
}

}  // namespace qwalk
