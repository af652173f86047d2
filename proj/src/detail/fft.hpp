#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

namespace qwalk::detail {

// In-place 1-D complex DFT of fixed size. FFTW's planner is not re-entrant,
// so planning is serialized; execution is not.
class Fft {
 public:
  enum class Direction { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

  Fft(std::size_t n, Direction dir) : n_(n) {
    buffer_ = fftw_alloc_complex(n);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_, static_cast<int>(dir),
                             FFTW_ESTIMATE);
  }
  ~Fft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(buffer_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  /// Unnormalized transform: out[m] = sum_n in[n] exp(-+2 pi i m n / N).
  void run(std::span<std::complex<double>> data) {
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer_);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(plan_);
    std::copy(raw, raw + n_, data.begin());
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  std::size_t n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace qwalk::detail
