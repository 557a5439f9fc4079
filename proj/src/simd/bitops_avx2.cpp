// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "decoy/simd/bitops.hpp"

namespace decoy::simd::detail {
namespace {

constexpr std::size_t kLane = 4;  // 64-bit words per __m256i

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Nibble-table popcount (Mula); returns four 64-bit partial sums.
inline __m256i popcnt_epi64(__m256i v) {
  const __m256i table =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes =
      _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::size_t hsum(__m256i acc) {
  alignas(32) std::uint64_t lanes[kLane];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane)
    store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  // _mm256_andnot_si256(a, b) computes ~a & b
  for (; i + kLane <= words; i += kLane)
    store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  for (; i < words; ++i) dst[i] &= ~src[i];
}

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) acc = _mm256_add_epi64(acc, popcnt_epi64(load(a + i)));
  std::size_t n = hsum(acc);
  for (; i < words; ++i) n += std::popcount(a[i]);
  return n;
}

std::size_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane)
    acc = _mm256_add_epi64(acc, popcnt_epi64(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t n = hsum(acc);
  for (; i < words; ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

std::size_t popcount_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane)
    acc = _mm256_add_epi64(acc, popcnt_epi64(_mm256_andnot_si256(load(b + i), load(a + i))));
  std::size_t n = hsum(acc);
  for (; i < words; ++i) n += std::popcount(a[i] & ~b[i]);
  return n;
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) {
    const __m256i stray = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(stray, stray)) return false;
  }
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) {
    const __m256i diff = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(diff, diff)) return false;
  }
  for (; i < words; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

const BitKernels avx2_kernels{Isa::avx2,   or_into,         and_into,  andnot_into, popcount,
                              popcount_and, popcount_andnot, is_subset, equal};

}  // namespace decoy::simd::detail
