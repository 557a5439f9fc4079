#include <doctest.h>

#include <random>
#include <vector>

#include "decoy/simd/bitops.hpp"

using namespace decoy::simd;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) {
    x = rng();
    for (int i = 0; i < density; ++i) x &= rng();  // sparser for higher density values
  }
  return w;
}

}  // namespace

TEST_CASE("scalar kernels on small hand cases") {
  const auto& k = kernels_for(Isa::scalar);
  std::vector<std::uint64_t> a{0b1011, 0, ~0ull};
  std::vector<std::uint64_t> b{0b0110, 1, ~0ull};
  CHECK(k.popcount(a.data(), 3) == 3 + 64);
  CHECK(k.popcount_and(a.data(), b.data(), 3) == 1 + 64);
  CHECK(k.popcount_andnot(a.data(), b.data(), 3) == 2);
  CHECK_FALSE(k.is_subset(a.data(), b.data(), 3));
  CHECK_FALSE(k.equal(a.data(), b.data(), 3));
  auto c = a;
  k.or_into(c.data(), b.data(), 3);
  CHECK(c == std::vector<std::uint64_t>{0b1111, 1, ~0ull});
  c = a;
  k.andnot_into(c.data(), b.data(), 3);
  CHECK(c == std::vector<std::uint64_t>{0b1001, 0, 0});
  CHECK(k.popcount(a.data(), 0) == 0);
  CHECK(k.is_subset(a.data(), b.data(), 0));
}

TEST_CASE("every compiled variant agrees with the scalar reference") {
  const auto& ref = kernels_for(Isa::scalar);
  std::mt19937_64 rng(42);
  for (Isa isa : {Isa::avx2}) {
    if (!isa_supported(isa)) {
      MESSAGE("skipping unsupported ISA " << isa_name(isa));
      continue;
    }
    const auto& k = kernels_for(isa);
    // lengths straddle the 4-word vector width and the unrolled blocks
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 127, 1000}) {
      for (int density = 0; density < 3; ++density) {
        const auto a = random_words(rng, n, density);
        auto b = random_words(rng, n, density);
        CHECK(k.popcount(a.data(), n) == ref.popcount(a.data(), n));
        CHECK(k.popcount_and(a.data(), b.data(), n) == ref.popcount_and(a.data(), b.data(), n));
        CHECK(k.popcount_andnot(a.data(), b.data(), n) == ref.popcount_andnot(a.data(), b.data(), n));
        CHECK(k.is_subset(a.data(), b.data(), n) == ref.is_subset(a.data(), b.data(), n));
        CHECK(k.equal(a.data(), b.data(), n) == ref.equal(a.data(), b.data(), n));
        CHECK(k.equal(a.data(), a.data(), n));
        // a subset by construction: b | a
        auto sup = b;
        ref.or_into(sup.data(), a.data(), n);
        CHECK(k.is_subset(a.data(), sup.data(), n));
        // single differing bit in the tail word
        if (n > 0) {
          auto d = a;
          d[n - 1] ^= 1ull << 63;
          CHECK_FALSE(k.equal(a.data(), d.data(), n));
        }
        for (auto op : {&BitKernels::or_into, &BitKernels::and_into, &BitKernels::andnot_into}) {
          auto x = a, y = a;
          (k.*op)(x.data(), b.data(), n);
          (ref.*op)(y.data(), b.data(), n);
          CHECK(x == y);
        }
      }
    }
  }
}

TEST_CASE("dispatch picks a supported ISA") {
  CHECK(isa_supported(Isa::scalar));
  CHECK(isa_supported(kernels().isa));
}
