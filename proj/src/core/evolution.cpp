#include "qwalk/evolution.hpp"

#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk {
namespace {

simd::CoinRows rows_of(const CoinOperator& coin) {
  return {coin.u00(), coin.u01(), coin.u10(), coin.u11()};
}

const double* as_doubles(const Spinor* p) { return reinterpret_cast<const double*>(p); }
double* as_doubles(Spinor* p) { return reinterpret_cast<double*>(p); }

}  // namespace

WalkState step(const WalkState& state, const CoinOperator& coin) {
  const auto in = state.amplitudes();
  std::vector<Spinor> out(in.size() + 2);
  simd::active_kernels().coin_shift(as_doubles(in.data()), in.size(), rows_of(coin),
                                    as_doubles(out.data()));
  return WalkState(std::move(out), state.origin_offset() + 1, state.time() + 1,
                   state.truncated_mass());
}

WalkState evolve(const WalkState& state, const CoinOperator& coin, std::int64_t steps,
                 std::size_t window_cap) {
  if (steps < 0) {
    throw Error(ErrorCode::InvalidArgument, "steps must be nonnegative, got " + std::to_string(steps));
  }
  if (steps == 0) return state;
  const std::size_t n0 = state.size();
  const std::size_t final_size = n0 + 2 * static_cast<std::size_t>(steps);
  if (final_size > window_cap) {
    throw Error(ErrorCode::ResourceLimit, "window of " + std::to_string(final_size) +
                                              " cells exceeds cap of " + std::to_string(window_cap));
  }

  // Ping-pong buffers sized for the final window; the live region always
  // starts at index 0 and grows by two cells per step.
  std::vector<Spinor> a(final_size), b(final_size);
  std::copy(state.amplitudes().begin(), state.amplitudes().end(), a.begin());
  const auto& kernels = simd::active_kernels();
  const auto rows = rows_of(coin);
  std::size_t live = n0;
  for (std::int64_t t = 0; t < steps; ++t) {
    kernels.coin_shift(as_doubles(a.data()), live, rows, as_doubles(b.data()));
    a.swap(b);
    live += 2;
  }
  return WalkState(std::move(a), state.origin_offset() + steps, state.time() + steps,
                   state.truncated_mass());
}

ProbabilityDistribution distribution(const WalkState& state) {
  const auto amps = state.amplitudes();
  std::vector<double> p(amps.size());
  simd::active_kernels().site_probabilities(as_doubles(amps.data()), amps.size(), p.data());

  ProbabilityDistribution dist;
  dist.time = state.time();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1e-300) continue;
    dist.positions.push_back(static_cast<std::int64_t>(i) - state.origin_offset());
    dist.probs.push_back(p[i]);
  }
  return dist;
}

}  // namespace qwalk
