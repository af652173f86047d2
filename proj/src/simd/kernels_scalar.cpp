#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd::detail {

void coin_shift_scalar(const double* in, std::size_t n, const CoinRows& rows, double* out) {
  const double u00 = rows.u00, u01 = rows.u01, u10 = rows.u10, u11 = rows.u11;
  out[2] = out[3] = out[6] = out[7] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double* p = in + 4 * j;
    double* up = out + 4 * j;
    double* dn = out + 4 * (j + 2) + 2;
    const double ur = p[0], ui = p[1], dr = p[2], di = p[3];
    up[0] = u00 * ur + u01 * dr;
    up[1] = u00 * ui + u01 * di;
    dn[0] = u10 * ur + u11 * dr;
    dn[1] = u10 * ui + u11 * di;
  }
  double* tail = out + 4 * n;
  tail[0] = tail[1] = tail[4] = tail[5] = 0.0;
}

void site_probabilities_scalar(const double* in, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double* p = in + 4 * j;
    const double a = p[0] * p[0] + p[1] * p[1];
    const double b = p[2] * p[2] + p[3] * p[3];
    out[j] = a + b;
  }
}

}  // namespace qwalk::simd::detail
