#include <arm_neon.h>

#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd::detail {

void coin_shift_neon(const double* in, std::size_t n, const CoinRows& rows, double* out) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  vst1q_f64(out + 2, zero);
  vst1q_f64(out + 6, zero);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t up = vld1q_f64(in + 4 * j);
    const float64x2_t dn = vld1q_f64(in + 4 * j + 2);
    vst1q_f64(out + 4 * j, vaddq_f64(vmulq_n_f64(up, rows.u00), vmulq_n_f64(dn, rows.u01)));
    vst1q_f64(out + 4 * (j + 2) + 2,
              vaddq_f64(vmulq_n_f64(up, rows.u10), vmulq_n_f64(dn, rows.u11)));
  }
  vst1q_f64(out + 4 * n, zero);
  vst1q_f64(out + 4 * n + 4, zero);
}

void site_probabilities_neon(const double* in, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t up = vld1q_f64(in + 4 * j);
    const float64x2_t dn = vld1q_f64(in + 4 * j + 2);
    const double a = vaddvq_f64(vmulq_f64(up, up));
    const double b = vaddvq_f64(vmulq_f64(dn, dn));
    out[j] = a + b;
  }
}

}  // namespace qwalk::simd::detail
