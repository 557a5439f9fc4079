#pragma once
// Boolean guards over proposition names, used as DFA edge labels.

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decoy/arena.hpp"

namespace decoy::logic {

class Guard {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  static Guard truth();
  static Guard falsity();
  static Guard atom(std::string name);
  static Guard negate(Guard g);
  static Guard conj(std::vector<Guard> parts);
  static Guard disj(std::vector<Guard> parts);

  Kind kind() const;
  bool eval(const Valuation& sigma) const;
  std::string to_string() const;
  void collect_props(std::set<std::string>& out) const;

 private:
  struct Node;
  explicit Guard(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Guard parse_guard(std::string_view text);

// Builds a guard for a Boolean function given as a truth table over `props`.
// Row r assigns props[i] = ((r >> i) & 1); table.size() == 2^props.size().
Guard guard_from_truth_table(std::span<const std::string> props, const std::vector<bool>& table);

}  // namespace decoy::logic
