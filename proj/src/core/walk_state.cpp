#include "qwalk/walk_state.hpp"

#include "qwalk/numeric.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk {


WalkState::WalkState(std::vector<Spinor> amplitudes, std::int64_t origin_offset,
                     std::int64_t time, double truncated_mass)
    : amplitudes_(std::move(amplitudes)),
      origin_offset_(origin_offset),
      time_(time),
      truncated_mass_(truncated_mass) {}

WalkState WalkState::localized(Spinor at_origin) { return WalkState({at_origin}, 0, 0); }

Spinor WalkState::at(std::int64_t x) const noexcept {
  const std::int64_t i = x + origin_offset_;
  if (i < 0 || i >= static_cast<std::int64_t>(amplitudes_.size())) return {};
  return amplitudes_[static_cast<std::size_t>(i)];
}

double WalkState::total_probability() const {
  std::vector<double> p(amplitudes_.size());
  simd::active_kernels().site_probabilities(reinterpret_cast<const double*>(amplitudes_.data()),
                                            amplitudes_.size(), p.data());
  return compensated_sum(p);
}

double ProbabilityDistribution::total() const { return compensated_sum(probs); }

}  // namespace qwalk
