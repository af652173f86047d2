#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/initial_states.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

bool odd(std::int64_t v) { return (v % 2) != 0; }

double sign_power(std::int64_t e) { return odd(e) ? -1.0 : 1.0; }  // (-1)^e

void require_noninteger(double a) {
  if (!std::isfinite(a) || std::abs(a - std::round(a)) < 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "case 1 requires a not an integer, got a=" << a;
    throw Error(ErrorCode::IntegerA, os.str());
  }
}

Complex case1(double a, std::int64_t x) {
  require_noninteger(a);
  return sign_power(x) * std::sin(a * pi) / ((static_cast<double>(x) + a) * pi);
}

Complex case2(std::int64_t x) {
  if (x == 0 || odd(x)) return 0.0;
  const double ax = std::abs(static_cast<double>(x));
  return -sign_power(x / 2) * 2.0 * std::sqrt(3.0) / (pi * ax);
}

Complex case3(std::int64_t x) {
  if (!odd(x)) return 0.0;
  const double v = sign_power((std::abs(x) - 1) / 2) * 2.0 / (pi * static_cast<double>(x));
  return {0.0, v};
}

Complex case4(std::int64_t x) {
  const double r7 = std::sqrt(7.0);
  const double xd = static_cast<double>(x);
  if (x == 0) return 2.0 / r7;
  if (x == 1 || x == -1) return {0.0, 2.0 / r7 * (0.25 + 1.0 / pi) / xd};
  if (odd(x)) return {0.0, 2.0 / (r7 * pi) / xd};
  if (std::abs(x) % 4 == 2) return {0.0, 2.0 / (r7 * pi) * (xd / (xd * xd - 1.0) - 2.0 / xd)};
  return {0.0, -2.0 / (r7 * pi) * xd / (xd * xd - 1.0)};
}

// j such that chi_{n,j} = x, or -1.
std::int64_t case5_index(int n, std::int64_t x) {
  // chi_{n,j} = s (2j) for even j and s (-(2j+2)) for odd j, s = (-1)^{n+1}.
  const std::int64_t y = odd(n + 1) ? -x : x;
  std::int64_t j = -1;
  if (y >= 0 && y % 4 == 0) {
    j = y / 2;
  } else if (y < 0 && (-y) % 4 == 0) {
    j = -y / 2 - 1;
  }
  return (j >= 0 && j <= n) ? j : -1;
}

Complex case5(int n, std::int64_t x) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "case 5 requires n >= 0");
  const std::int64_t j = case5_index(n, x);
  if (j < 0) return 0.0;
  // n = 0 reduces to the localized state; the prefactor is exactly 1.
  if (n == 0) return 1.0;
  const double nn = n;
  const double log_prefactor =
      -2.0 * nn * std::numbers::ln2 +
      0.5 * (0.5 * std::log(pi) + std::lgamma(2 * nn + 2) - std::numbers::ln2 -
             std::lgamma(2 * nn + 1.5));
  const double jd = static_cast<double>(j);
  const double log_binom =
      std::lgamma(2 * nn + 2) - std::lgamma(nn - jd + 1) - std::lgamma(nn + jd + 2);
  return std::exp(log_prefactor + log_binom);
}

}  // namespace

std::string describe(const InitialKind& kind) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Localized>) os << "localized";
        else if constexpr (std::is_same_v<K, kinds::Case1>) os << "case1(a=" << k.a << ")";
        else if constexpr (std::is_same_v<K, kinds::Case2>) os << "case2";
        else if constexpr (std::is_same_v<K, kinds::Case3>) os << "case3";
        else if constexpr (std::is_same_v<K, kinds::Case4>) os << "case4";
        else if constexpr (std::is_same_v<K, kinds::Case5>) os << "case5(n=" << k.n << ")";
        else os << "generic";
      },
      kind);
  return os.str();
}

Complex case_amplitude(const InitialKind& kind, std::int64_t x) {
  return std::visit(
      [x](const auto& k) -> Complex {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Localized>) return x == 0 ? 1.0 : 0.0;
        else if constexpr (std::is_same_v<K, kinds::Case1>) return case1(k.a, x);
        else if constexpr (std::is_same_v<K, kinds::Case2>) return case2(x);
        else if constexpr (std::is_same_v<K, kinds::Case3>) return case3(x);
        else if constexpr (std::is_same_v<K, kinds::Case4>) return case4(x);
        else if constexpr (std::is_same_v<K, kinds::Case5>) return case5(k.n, x);
        else throw Error(ErrorCode::InvalidArgument, "generic initial states have no closed form");
      },
      kind);
}

std::vector<std::int64_t> case5_support(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "case 5 requires n >= 0");
  std::vector<std::int64_t> chi;
  chi.reserve(static_cast<std::size_t>(n) + 1);
  const std::int64_t s = odd(n + 1) ? -1 : 1;
  for (std::int64_t j = 0; j <= n; ++j) {
    chi.push_back(s * (static_cast<std::int64_t>(sign_power(j)) * (2 * j + 1) - 1));
  }
  return chi;
}

}  // namespace qwalk
