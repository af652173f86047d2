#pragma once

// Data-parallel inner loops of the walk. Every backend produces results that
// are bit-identical to the scalar reference: products and sums are formed in
// the same order and never fused.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qwalk::simd {

enum class Backend { Scalar, Avx2, Neon };

struct CoinRows {
  double u00, u01, u10, u11;
};

/// `in` holds n spinors as (up.re, up.im, down.re, down.im); `out` receives
/// n + 2 spinors:
///   out[j].up     = u00 * in[j].up + u01 * in[j].down        (j < n)
///   out[j + 2].dn = u10 * in[j].up + u11 * in[j].down        (j < n)
/// and zeros in out[n].up, out[n+1].up, out[0].dn, out[1].dn.
using CoinShiftFn = void (*)(const double* in, std::size_t n, const CoinRows& rows, double* out);

/// out[j] = (|up.re|^2 + |up.im|^2) + (|dn.re|^2 + |dn.im|^2)
using SiteProbabilityFn = void (*)(const double* in, std::size_t n, double* out);

struct KernelTable {
  Backend backend;
  CoinShiftFn coin_shift;
  SiteProbabilityFn site_probabilities;
};

std::string_view backend_name(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

/// Compiled in and supported by the running CPU.
bool backend_available(Backend b);
std::vector<Backend> available_backends();

/// Throws qwalk::Error(InvalidArgument) if `b` is unavailable.
const KernelTable& kernels_for(Backend b);

/// The table used by step()/evolve(). Defaults to the widest available
/// backend; the QWALK_SIMD environment variable (scalar|avx2|neon) overrides.
const KernelTable& active_kernels();
Backend active_backend();
void set_active_backend(Backend b);

namespace detail {
void coin_shift_scalar(const double* in, std::size_t n, const CoinRows& rows, double* out);
void site_probabilities_scalar(const double* in, std::size_t n, double* out);
#if defined(QWALK_HAVE_AVX2)
void coin_shift_avx2(const double* in, std::size_t n, const CoinRows& rows, double* out);
void site_probabilities_avx2(const double* in, std::size_t n, double* out);
#endif
#if defined(QWALK_HAVE_NEON)
void coin_shift_neon(const double* in, std::size_t n, const CoinRows& rows, double* out);
void site_probabilities_neon(const double* in, std::size_t n, double* out);
#endif
}  // namespace detail

}  // namespace qwalk::simd
