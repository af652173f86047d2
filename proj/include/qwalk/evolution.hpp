#pragma once

#include <cstddef>
#include <cstdint>

#include "qwalk/coin.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Default cap on the number of lattice cells a single walk may allocate
/// (2^26 cells, 2 GiB of amplitudes).
inline constexpr std::size_t kDefaultWindowCap = std::size_t{1} << 26;

/// One coin flip followed by the conditional shift:
///   up'(x)   = row0(U) . psi(x+1)
///   down'(x) = row1(U) . psi(x-1)
/// The returned window is one cell wider on each side.
WalkState step(const WalkState& state, const CoinOperator& coin);

/// `steps` applications of step(). Throws ResourceLimit if the final window
/// would exceed `window_cap` cells.
WalkState evolve(const WalkState& state, const CoinOperator& coin, std::int64_t steps,
                 std::size_t window_cap = kDefaultWindowCap);

/// p(x) = |up(x)|^2 + |down(x)|^2; cells with p < 1e-300 are omitted.
ProbabilityDistribution distribution(const WalkState& state);

}  // namespace qwalk
