#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "qwalk/coin.hpp"
#include "qwalk/initial_states.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Uhat(k) = diag(e^{ik}, e^{-ik}) U, the one-step propagator for
/// Psi^(k) = sum_x e^{-ikx} psi(x).
std::array<Complex, 4> momentum_propagator(const CoinOperator& coin, double k);

/// Uhat(k)^t from its two unit-modulus eigenvalues (Sylvester's formula),
/// falling back to repeated squaring when they nearly coincide.
std::array<Complex, 4> momentum_propagator_power(const CoinOperator& coin, double k, std::int64_t t);

/// Smallest power-of-two k-grid that holds the evolved window without wrap.
std::size_t minimal_k_grid(const InitialSpec& spec, std::int64_t t);

/// Evolves in momentum space and transforms back. Localized and Case 5 start
/// from their exact momentum profiles; the other kinds start from the DFT of
/// build(spec), so the result is comparable to evolve(build(spec), coin, t).
/// k_grid_size must be a power of two; GridTooSmall if wrapped-around cells
/// carry more than 1e-10 probability.
WalkState fourier_oracle(const InitialSpec& spec, const CoinOperator& coin, std::int64_t t,
                         std::size_t k_grid_size);

}  // namespace qwalk
