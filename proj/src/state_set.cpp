#include "decoy/state_set.hpp"

#include <stdexcept>

#include "decoy/simd/bitops.hpp"

namespace decoy {

StateSet::StateSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.clear_tail();
  return s;
}

void StateSet::clear_tail() {
  if (const std::size_t rem = universe_ % 64; rem != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << rem) - 1;
}

void StateSet::require_same_universe(const StateSet& other) const {
  if (universe_ != other.universe_) throw std::invalid_argument("StateSet: universe mismatch");
}

std::size_t StateSet::size() const { return simd::kernels().popcount(words_.data(), words_.size()); }

bool StateSet::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

void StateSet::clear() {
  for (auto& w : words_) w = 0;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  require_same_universe(other);
  simd::kernels().or_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  require_same_universe(other);
  simd::kernels().and_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
  require_same_universe(other);
  simd::kernels().andnot_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out = full(universe_);
  out -= *this;
  return out;
}

std::size_t StateSet::count_in(const StateSet& mask) const {
  require_same_universe(mask);
  return simd::kernels().popcount_and(words_.data(), mask.words_.data(), words_.size());
}

std::size_t StateSet::count_not_in(const StateSet& mask) const {
  require_same_universe(mask);
  return simd::kernels().popcount_andnot(words_.data(), mask.words_.data(), words_.size());
}

bool StateSet::is_subset_of(const StateSet& other) const {
  require_same_universe(other);
  return simd::kernels().is_subset(words_.data(), other.words_.data(), words_.size());
}

bool operator==(const StateSet& a, const StateSet& b) {
  return a.universe_ == b.universe_ &&
         simd::kernels().equal(a.words_.data(), b.words_.data(), a.words_.size());
}

std::vector<StateIndex> StateSet::members() const {
  std::vector<StateIndex> out;
  for_each([&](StateIndex v) { out.push_back(v); });
  return out;
}

}  // namespace decoy
