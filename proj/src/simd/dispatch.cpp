#include <atomic>
#include <cstdlib>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd {
namespace {

constexpr KernelTable kScalar{Backend::Scalar, detail::coin_shift_scalar,
                              detail::site_probabilities_scalar};
#if defined(QWALK_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, detail::coin_shift_avx2,
                            detail::site_probabilities_avx2};
#endif
#if defined(QWALK_HAVE_NEON)
constexpr KernelTable kNeon{Backend::Neon, detail::coin_shift_neon,
                            detail::site_probabilities_neon};
#endif

Backend best_available() {
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("QWALK_SIMD"); env != nullptr) {
    if (auto b = parse_backend(env); b && backend_available(*b)) return *b;
  }
  return best_available();
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "neon") return Backend::Neon;
  return std::nullopt;
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(QWALK_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(QWALK_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (backend_available(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& kernels_for(Backend b) {
  if (!backend_available(b)) {
    throw Error(ErrorCode::InvalidArgument,
                "SIMD backend '" + std::string(backend_name(b)) + "' is not available");
  }
  switch (b) {
#if defined(QWALK_HAVE_AVX2)
    case Backend::Avx2: return kAvx2;
#endif
#if defined(QWALK_HAVE_NEON)
    case Backend::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active_kernels() { return kernels_for(active().load(std::memory_order_relaxed)); }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  (void)kernels_for(b);
  active().store(b, std::memory_order_relaxed);
}

}  // namespace qwalk::simd
