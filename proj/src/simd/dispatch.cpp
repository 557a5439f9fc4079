#include <cstdlib>
#include <stdexcept>
#include <string>

#include "decoy/simd/bitops.hpp"

namespace decoy::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DECOY_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const BitKernels& kernels_for(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("bit kernels: ISA not available: " + std::string(isa_name(isa)));
#if defined(DECOY_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_kernels;
#endif
  return detail::scalar_kernels;
}

namespace {

const BitKernels& select_best() {
  if (const char* forced = std::getenv("DECOY_SIMD"); forced && std::string(forced) == "scalar")
    return detail::scalar_kernels;
  if (isa_supported(Isa::avx2)) return kernels_for(Isa::avx2);
  return detail::scalar_kernels;
}

}  // namespace

const BitKernels& kernels() {
  static const BitKernels& best = select_best();
  return best;
}

}  // namespace decoy::simd
