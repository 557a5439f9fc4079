#pragma once
// Word-level set algebra over packed 64-bit bitsets.
//
// Every kernel has a scalar reference implementation; vector variants are
// compiled per ISA and picked once at startup. All variants must produce
// identical results for every input, including tails shorter than a vector.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace decoy::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct BitKernels {
  Isa isa;
  // dst |= src
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // dst &= src
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // dst &= ~src
  void (*andnot_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t words);
  // |a & b|
  std::size_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  // |a & ~b|
  std::size_t (*popcount_andnot)(const std::uint64_t* a, const std::uint64_t* b,
                                 std::size_t words);
  // (a & ~b) == 0
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
};

// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

// Kernel table for a specific ISA; throws std::invalid_argument if unsupported.
const BitKernels& kernels_for(Isa isa);

// Best supported ISA. Setting DECOY_SIMD=scalar in the environment pins the
// scalar path.
const BitKernels& kernels();

namespace detail {
extern const BitKernels scalar_kernels;
#if defined(DECOY_HAVE_AVX2)
extern const BitKernels avx2_kernels;
#endif
}  // namespace detail

}  // namespace decoy::simd
