#pragma once
// Specification DFAs with guard-labeled edges.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decoy/arena.hpp"
#include "decoy/logic/guard.hpp"
#include "decoy/logic/scltl.hpp"

namespace decoy::logic {

using DfaState = std::uint32_t;

// Determinism / completeness / absorption failure with a witnessing letter.
class DfaValidationError : public InputError {
 public:
  DfaValidationError(const std::string& what, std::string state, Valuation sigma)
      : InputError(what), state_(std::move(state)), sigma_(std::move(sigma)) {}
  const std::string& state() const { return state_; }
  const Valuation& sigma() const { return sigma_; }

 private:
  std::string state_;
  Valuation sigma_;
};

struct DfaEdge {
  DfaState from;
  Guard guard;
  DfaState to;
};

// Deterministic, complete, accepting states absorbing. Construction validates
// by enumerating every valuation of the propositions the guards mention.
class Dfa {
 public:
  struct EdgeSpec {
    std::string from;
    std::string guard;
    std::string to;
  };

  // Largest guard alphabet accepted for exhaustive validation.
  static constexpr std::size_t kMaxAlphabet = 16;

  static Dfa create(std::vector<std::string> states, const std::string& initial,
                    const std::vector<std::string>& accepting, const std::vector<EdgeSpec>& edges);
  static Dfa create(std::vector<std::string> states, DfaState initial,
                    std::vector<DfaState> accepting, std::vector<DfaEdge> edges);

  std::size_t num_states() const { return state_ids_.size(); }
  const std::string& state_id(DfaState q) const { return state_ids_.at(q); }
  std::optional<DfaState> find_state(std::string_view id) const;
  DfaState initial() const { return initial_; }
  bool is_accepting(DfaState q) const { return accepting_.at(q); }
  std::vector<DfaState> accepting_states() const;
  const std::vector<DfaEdge>& edges() const { return edges_; }

  // Sorted propositions mentioned by any guard.
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  // Unique successor of q under sigma; propositions outside the alphabet are
  // ignored.
  DfaState step(DfaState q, const Valuation& sigma) const;
  // Same, with sigma already encoded as a bitmask over alphabet().
  DfaState step_mask(DfaState q, std::uint32_t mask) const { return table_[q * letters_ + mask]; }
  std::uint32_t encode(const Valuation& sigma) const;

  // Free-form per-state notes (e.g. the progressed formula). Not semantic.
  const std::map<DfaState, std::string>& annotations() const { return annotations_; }
  void set_annotation(DfaState q, std::string text) { annotations_[q] = std::move(text); }

 private:
  Dfa() = default;
  void validate_and_tabulate();

  std::vector<std::string> state_ids_;
  DfaState initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<DfaEdge> edges_;
  std::vector<std::string> alphabet_;
  std::size_t letters_ = 1;
  std::vector<DfaState> table_;
  std::map<DfaState, std::string> annotations_;
};

DfaState dfa_step(const Dfa& dfa, DfaState q, const Valuation& sigma);

// DFA document: {states, initial, accepting, edges:[{from, guard, to}]}.
Dfa load_dfa(std::string_view document);
Dfa load_dfa_file(const std::filesystem::path& path);
std::string dump_dfa(const Dfa& dfa);

// Progression-based translation. Accepting iff the progressed obligation is
// `true`; states are obligations in canonical DNF. `aps` must contain every
// atom of the formula. Guards range over the formula's atoms only.
Dfa to_dfa(const ScltlFormula& formula, const std::vector<std::string>& aps);

// Largest formula alphabet to_dfa will enumerate.
inline constexpr std::size_t kMaxFormulaAtoms = 12;

}  // namespace decoy::logic
