#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace decoy {

using StateIndex = std::uint32_t;

// Fixed-universe bitset over state indices [0, universe). Bulk operations go
// through the dispatched SIMD kernels; both operands must share a universe.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe);

  static StateSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool contains(StateIndex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void insert(StateIndex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(StateIndex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t size() const;
  bool empty() const;
  void clear();

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);
  StateSet& operator-=(const StateSet& other);

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  // Universe-relative complement.
  StateSet complement() const;

  std::size_t count_in(const StateSet& mask) const;   // |this & mask|
  std::size_t count_not_in(const StateSet& mask) const;  // |this \ mask|
  bool is_subset_of(const StateSet& other) const;

  friend bool operator==(const StateSet& a, const StateSet& b);

  // Members in ascending index order.
  std::vector<StateIndex> members() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int bit = __builtin_ctzll(bits);
        fn(static_cast<StateIndex>(w * 64 + bit));
        bits &= bits - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void require_same_universe(const StateSet& other) const;
  void clear_tail();

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace decoy
