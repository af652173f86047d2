#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

struct Spinor {
  Complex up;
  Complex down;

  double norm2() const noexcept { return std::norm(up) + std::norm(down); }
  friend bool operator==(const Spinor&, const Spinor&) = default;
};

static_assert(sizeof(Spinor) == 4 * sizeof(double), "kernels address Spinor as four doubles");

/// Dense amplitude window over positions [x_min, x_max] at a given time.
class WalkState {
 public:
  WalkState() = default;
  WalkState(std::vector<Spinor> amplitudes, std::int64_t origin_offset, std::int64_t time,
            double truncated_mass = 0.0);

  static WalkState localized(Spinor at_origin);

  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::int64_t origin_offset() const noexcept { return origin_offset_; }
  std::int64_t time() const noexcept { return time_; }
  std::int64_t x_min() const noexcept { return -origin_offset_; }
  std::int64_t x_max() const noexcept {
    return static_cast<std::int64_t>(amplitudes_.size()) - 1 - origin_offset_;
  }
  /// Probability discarded when the initial state was truncated.
  double truncated_mass() const noexcept { return truncated_mass_; }

  /// Amplitude at position x; zero outside the window.
  Spinor at(std::int64_t x) const noexcept;

  std::span<const Spinor> amplitudes() const noexcept { return amplitudes_; }
  std::span<Spinor> amplitudes() noexcept { return amplitudes_; }

  double total_probability() const;

 private:
  std::vector<Spinor> amplitudes_;
  std::int64_t origin_offset_ = 0;
  std::int64_t time_ = 0;
  double truncated_mass_ = 0.0;
};

struct ProbabilityDistribution {
  std::int64_t time = 0;
  std::vector<std::int64_t> positions;  // ascending
  std::vector<double> probs;

  double total() const;
};

}  // namespace qwalk
