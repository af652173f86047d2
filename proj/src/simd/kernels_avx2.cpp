#include <immintrin.h>

#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd::detail {

void coin_shift_avx2(const double* in, std::size_t n, const CoinRows& rows, double* out) {
  const __m256d row0 = _mm256_setr_pd(rows.u00, rows.u00, rows.u01, rows.u01);
  const __m256d row1 = _mm256_setr_pd(rows.u10, rows.u10, rows.u11, rows.u11);
  _mm_storeu_pd(out + 2, _mm_setzero_pd());
  _mm_storeu_pd(out + 6, _mm_setzero_pd());

  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d v0 = _mm256_loadu_pd(in + 4 * j);
    const __m256d v1 = _mm256_loadu_pd(in + 4 * j + 4);
    const __m256d a0 = _mm256_mul_pd(v0, row0);
    const __m256d a1 = _mm256_mul_pd(v1, row0);
    const __m256d b0 = _mm256_mul_pd(v0, row1);
    const __m256d b1 = _mm256_mul_pd(v1, row1);
    // [up_j, up_j+1] = low halves + high halves
    const __m256d up = _mm256_add_pd(_mm256_permute2f128_pd(a0, a1, 0x20),
                                     _mm256_permute2f128_pd(a0, a1, 0x31));
    const __m256d dn = _mm256_add_pd(_mm256_permute2f128_pd(b0, b1, 0x20),
                                     _mm256_permute2f128_pd(b0, b1, 0x31));
    _mm_storeu_pd(out + 4 * j, _mm256_castpd256_pd128(up));
    _mm_storeu_pd(out + 4 * j + 4, _mm256_extractf128_pd(up, 1));
    _mm_storeu_pd(out + 4 * (j + 2) + 2, _mm256_castpd256_pd128(dn));
    _mm_storeu_pd(out + 4 * (j + 3) + 2, _mm256_extractf128_pd(dn, 1));
  }
  for (; j < n; ++j) {
    const __m256d v = _mm256_loadu_pd(in + 4 * j);
    const __m256d a = _mm256_mul_pd(v, row0);
    const __m256d b = _mm256_mul_pd(v, row1);
    _mm_storeu_pd(out + 4 * j,
                  _mm_add_pd(_mm256_castpd256_pd128(a), _mm256_extractf128_pd(a, 1)));
    _mm_storeu_pd(out + 4 * (j + 2) + 2,
                  _mm_add_pd(_mm256_castpd256_pd128(b), _mm256_extractf128_pd(b, 1)));
  }
  _mm_storeu_pd(out + 4 * n, _mm_setzero_pd());
  _mm_storeu_pd(out + 4 * n + 4, _mm_setzero_pd());
}

void site_probabilities_avx2(const double* in, std::size_t n, double* out) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d v0 = _mm256_loadu_pd(in + 4 * j);
    const __m256d v1 = _mm256_loadu_pd(in + 4 * j + 4);
    // [|up0|^2, |up1|^2, |dn0|^2, |dn1|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    _mm_storeu_pd(out + j, _mm_add_pd(_mm256_castpd256_pd128(h), _mm256_extractf128_pd(h, 1)));
  }
  for (; j < n; ++j) {
    const double* p = in + 4 * j;
    const double a = p[0] * p[0] + p[1] * p[1];
    const double b = p[2] * p[2] + p[3] * p[3];
    out[j] = a + b;
  }
}

}  // namespace qwalk::simd::detail
