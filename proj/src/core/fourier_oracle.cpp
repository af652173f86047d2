#include "qwalk/fourier_oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "../detail/fft.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;
using Mat = std::array<Complex, 4>;

// Eigenvalues closer than this use repeated squaring instead of Sylvester.
constexpr double kDegenerateGap = 1e-6;
constexpr double kAliasMass = 1e-10;

Mat multiply(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat power_by_squaring(Mat base, std::int64_t t) {
  Mat result{1.0, 0.0, 0.0, 1.0};
  while (t > 0) {
    if (t & 1) result = multiply(result, base);
    base = multiply(base, base);
    t >>= 1;
  }
  return result;
}

std::size_t bin_of(std::int64_t x, std::size_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(((x % mm) + mm) % mm);
}

bool exact_profile(const InitialKind& kind) {
  return std::holds_alternative<kinds::Localized>(kind) || std::holds_alternative<kinds::Case5>(kind);
}

}  // namespace

Mat momentum_propagator(const CoinOperator& coin, double k) {
  const Complex ep = std::polar(1.0, k), em = std::polar(1.0, -k);
  return {ep * coin.u00(), ep * coin.u01(), em * coin.u10(), em * coin.u11()};
}

Mat momentum_propagator_power(const CoinOperator& coin, double k, std::int64_t t) {
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  const Mat a = momentum_propagator(coin, k);
  if (t == 0) return {1.0, 0.0, 0.0, 1.0};
  const Complex tr = a[0] + a[3];
  const Complex det = a[0] * a[3] - a[1] * a[2];
  const Complex disc = std::sqrt(0.25 * tr * tr - det);
  const Complex l1 = 0.5 * tr + disc, l2 = 0.5 * tr - disc;
  const Complex gap = l1 - l2;
  if (std::abs(gap) < kDegenerateGap) return power_by_squaring(a, t);
  // Project onto the unit circle before raising to the t-th power.
  const Complex p1 = std::polar(1.0, std::arg(l1) * static_cast<double>(t));
  const Complex p2 = std::polar(1.0, std::arg(l2) * static_cast<double>(t));
  // A^t = p1 (A - l2 I)/(l1 - l2) + p2 (A - l1 I)/(l2 - l1)
  const Complex c1 = p1 / gap, c2 = -p2 / gap;
  return {c1 * (a[0] - l2) + c2 * (a[0] - l1), (c1 + c2) * a[1], (c1 + c2) * a[2],
          c1 * (a[3] - l2) + c2 * (a[3] - l1)};
}

std::size_t minimal_k_grid(const InitialSpec& spec, std::int64_t t) {
  const WalkState s0 = build(spec);
  const auto span = static_cast<std::size_t>(s0.x_max() - s0.x_min() + 1 + 2 * t);
  return detail::next_power_of_two(span);
}

WalkState fourier_oracle(const InitialSpec& spec, const CoinOperator& coin, std::int64_t t,
                         std::size_t k_grid_size) {
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
  if (!detail::is_power_of_two(k_grid_size)) {
    throw Error(ErrorCode::InvalidArgument, "k_grid_size must be a power of two");
  }
  const std::size_t m = k_grid_size;
  const WalkState s0 = build(spec);
  const std::int64_t lo = s0.x_min() - t, hi = s0.x_max() + t;
  const auto window = static_cast<std::size_t>(hi - lo + 1);

  std::vector<Complex> up(m), down(m);
  if (exact_profile(spec.kind)) {
    const auto F = momentum_profile(spec.kind);
    for (std::size_t j = 0; j < m; ++j) {
      const Complex f = F(2.0 * pi * static_cast<double>(j) / static_cast<double>(m));
      up[j] = f * spec.phi.alpha;
      down[j] = f * spec.phi.beta;
    }
  } else {
    if (static_cast<std::size_t>(s0.x_max() - s0.x_min() + 1) > m) {
      throw Error(ErrorCode::GridTooSmall, "k-grid of " + std::to_string(m) +
                                               " points cannot hold the initial window");
    }
    for (std::int64_t x = s0.x_min(); x <= s0.x_max(); ++x) {
      const Spinor sp = s0.at(x);
      up[bin_of(x, m)] = sp.up;
      down[bin_of(x, m)] = sp.down;
    }
    detail::Fft forward(m, detail::Fft::Direction::Forward);
    forward.run(up);
    forward.run(down);
  }

  for (std::size_t j = 0; j < m; ++j) {
    const Mat p = momentum_propagator_power(coin, 2.0 * pi * static_cast<double>(j) / static_cast<double>(m), t);
    const Complex u = up[j], d = down[j];
    up[j] = p[0] * u + p[1] * d;
    down[j] = p[2] * u + p[3] * d;
  }
  detail::Fft backward(m, detail::Fft::Direction::Backward);
  backward.run(up);
  backward.run(down);
  const double inv = 1.0 / static_cast<double>(m);

  std::vector<Spinor> amps(window);
  for (std::int64_t x = lo; x <= hi; ++x) {
    const std::size_t b = bin_of(x, m);
    amps[static_cast<std::size_t>(x - lo)] = {up[b] * inv, down[b] * inv};
  }
  if (window > m) {
    // Cells x and x + m share a bin. Keep the lower copy if the shared bins
    // are empty enough; otherwise the grid is too coarse.
    double shared = 0.0;
    for (std::int64_t x = lo + static_cast<std::int64_t>(m); x <= hi; ++x) {
      Spinor& sp = amps[static_cast<std::size_t>(x - lo)];
      shared += sp.norm2();
      sp = {};
    }
    if (shared > kAliasMass) {
      throw Error(ErrorCode::GridTooSmall, "k-grid of " + std::to_string(m) + " points wraps " +
                                               std::to_string(shared) + " probability");
    }
  }
  return WalkState(std::move(amps), -lo, s0.time() + t, s0.truncated_mass());
}

}  // namespace qwalk
