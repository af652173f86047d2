#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/limit_densities.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

void require_support(const SupportPoint& pt, const CoinOperator& coin) {
  if (!(std::abs(pt.x) <= std::abs(coin.c())) || !(pt.gap > 0.0)) {
    throw Error(ErrorCode::OutOfSupport, "x = " + std::to_string(pt.x) + " is outside (-|c|, |c|)");
  }
}

double square(double v) { return v * v; }

}  // namespace

double g_case1(double x, const CoinOperator& coin) {
  require_support(SupportPoint::at(x, coin.c()), coin);
  return 1.0;
}

double g_case2(const SupportPoint& pt, const CoinOperator& coin) {
  require_support(pt, coin);
  const double c = coin.c(), s = coin.s(), x = pt.x;
  const double denom = c * c * (1.0 - x * x);
  const double arg = coin.xi() == 0 ? 4.0 * s * s * x * x / denom : 4.0 * pt.gap / denom;
  return 3.0 / (pi * pi) * square(std::log(arg));
}

double g_case3(const SupportPoint& pt, const CoinOperator& coin) {
  require_support(pt, coin);
  // The two logarithms in each printed bracket have arguments whose product
  // is one, so they are negatives of each other. Using the larger argument
  // avoids cancellation in the difference form.
  const double ac = std::abs(coin.c()), as = std::abs(coin.s()), x = pt.x;
  const double root1 = std::sqrt(1.0 - x * x);
  const double rootc = std::sqrt(pt.gap);
  double log_arg;
  if (coin.xi() == 0) {
    log_arg = std::log((ac * root1 + rootc) / (as * std::abs(x)));
  } else {
    log_arg = std::log((ac * root1 + as * std::abs(x)) / rootc);
  }
  return 4.0 / (pi * pi) * square(log_arg);
}

double g_case4_even(const SupportPoint& pt, const CoinOperator& coin) {
  require_support(pt, coin);
  const double c = coin.c(), s = coin.s(), x = pt.x;
  const double denom = c * c * (1.0 - x * x);
  const double ratio = coin.xi() == 0 ? pt.gap / denom : s * s * x * x / denom;
  return 2.0 / 7.0 * (3.0 + ratio);
}

double g_case4_odd(const SupportPoint& pt, const CoinOperator& coin) {
  require_support(pt, coin);
  const double c = coin.c(), s = coin.s(), x = pt.x;
  const double ac = std::abs(c);
  const double sign_c = c / ac;
  if (coin.xi() == 0) {
    const double body = 8.0 * sign_c / 7.0 * (1.0 - std::sqrt(pt.gap) / (ac * std::sqrt(1.0 - x * x)));
    return x >= 0.0 ? -body : body;
  }
  const double drift = std::abs(s) * x / (c * std::sqrt(1.0 - x * x));
  return x >= 0.0 ? 8.0 / 7.0 * (sign_c - drift) : -8.0 / 7.0 * (sign_c + drift);
}

double g_case5(const SupportPoint& pt, const CoinOperator& coin, int n) {
  require_support(pt, coin);
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Case 5 needs n >= 0");
  if (n == 0) return 1.0;
  const double c = coin.c(), s = coin.s(), x = pt.x;
  const double denom = c * c * (1.0 - x * x);
  // a + b = 1 on the support.
  const double a = s * s * x * x / denom;
  const double b = pt.gap / denom;
  const double p = 2.0 * n + 1.0;
  const double log_k = 0.5 * std::log(pi) + std::lgamma(2.0 * n + 2.0) - std::log(2.0) -
                       std::lgamma(2.0 * n + 1.5);
  return std::exp(log_k) * (std::pow(a, p) + std::pow(b, p));
}

double g_case2(double x, const CoinOperator& coin) { return g_case2(SupportPoint::at(x, coin.c()), coin); }
double g_case3(double x, const CoinOperator& coin) { return g_case3(SupportPoint::at(x, coin.c()), coin); }
double g_case4_even(double x, const CoinOperator& coin) {
  return g_case4_even(SupportPoint::at(x, coin.c()), coin);
}
double g_case4_odd(double x, const CoinOperator& coin) {
  return g_case4_odd(SupportPoint::at(x, coin.c()), coin);
}
double g_case5(double x, const CoinOperator& coin, int n) {
  return g_case5(SupportPoint::at(x, coin.c()), coin, n);
}

CaseWeights g_case(const InitialKind& kind, const SupportPoint& pt, const CoinOperator& coin) {
  return std::visit(
      [&](const auto& k) -> CaseWeights {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Localized> || std::is_same_v<K, kinds::Case1>) {
          require_support(pt, coin);
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<K, kinds::Case2>) {
          return {g_case2(pt, coin), 0.0};
        } else if constexpr (std::is_same_v<K, kinds::Case3>) {
          return {g_case3(pt, coin), 0.0};
        } else if constexpr (std::is_same_v<K, kinds::Case4>) {
          return {g_case4_even(pt, coin), g_case4_odd(pt, coin)};
        } else if constexpr (std::is_same_v<K, kinds::Case5>) {
          return {g_case5(pt, coin, k.n), 0.0};
        } else {
          throw Error(ErrorCode::InvalidArgument, "generic initial states have no closed-form weight");
        }
      },
      kind);
}

CaseWeights g_case(const InitialKind& kind, double x, const CoinOperator& coin) {
  return g_case(kind, SupportPoint::at(x, coin.c()), coin);
}

std::vector<double> interior_splits_for(const InitialKind& kind, int xi) {
  if (std::holds_alternative<kinds::Case4>(kind)) return {0.0};
  if (xi == 0 && (std::holds_alternative<kinds::Case2>(kind) || std::holds_alternative<kinds::Case3>(kind))) {
    return {0.0};
  }
  return {};
}

}  // namespace qwalk
