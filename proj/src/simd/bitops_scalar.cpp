#include <bit>

#include "decoy/simd/bitops.hpp"

namespace decoy::simd::detail {
namespace {

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= ~src[i];
}

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += std::popcount(a[i]);
  return n;
}

std::size_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

std::size_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += std::popcount(a[i] & ~b[i]);
  return n;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

const BitKernels scalar_kernels{Isa::scalar, or_into,         and_into,  andnot_into, popcount,
                                popcount_and, popcount_andnot, is_subset, equal};

}  // namespace decoy::simd::detail
