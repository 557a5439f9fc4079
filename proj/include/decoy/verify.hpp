#pragma once
// Checkers for strategy soundness and for the composition/order properties of
// deceptive regions, used by the CLI `verify` command and the test suites.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "decoy/allocate.hpp"
#include "decoy/solver.hpp"

namespace decoy {

struct SoundnessResult {
  bool ok = true;
  std::size_t checked = 0;      // start states examined
  std::size_t max_steps = 0;    // longest play until the target
  std::vector<StateIndex> play;  // counterexample play when !ok
  std::string reason;
};

// Exhaustive adversarial traversal: from every state in `from`, every play in
// which the reacher follows `strategy` and the avoider picks any move reaches
// `target` within |states| steps without visiting `forbidden`.
SoundnessResult check_reach_strategy(const GameGraph& graph, const StateSet& target, const StateSet& forbidden,
                                     const Strategy& strategy, const StateSet& from);

// Same check for P1's extracted strategy on DSWin of a deceptive game; sinks
// are forbidden.
SoundnessResult check_deceptive_strategy(const DeceptiveGame& game, const Region& dswin, const Strategy& strategy);

// Rewrites one reacher choice so that it leaves the winning region or falls
// back to a non-improving move. Returns false when no such rewrite exists.
bool tamper_strategy(const GameGraph& graph, const Region& region, Strategy& strategy);

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;
  std::string note;
};

struct VerifyOptions {
  // Subsets of the candidate set enumerated by the per-subset checks.
  std::uint64_t subset_cap = std::uint64_t{1} << 16;
  bool tamper = false;
};

// compose(DSWin_{s1}, DSWin_{s2}) equals a from-scratch DSWin_{s1, s2} for
// every pair, and every GreedyMax prefix matches its from-scratch region.
PropertyResult check_composition(const AllocationProblem& problem);
// DSWin_D u DSWin_{s} is contained in DSWin_{D u {s}}.
PropertyResult check_containment(const AllocationProblem& problem, const VerifyOptions& options = {});
// |union of singleton regions of D| <= |DSWin_D|.
PropertyResult check_union_bound(const AllocationProblem& problem, const VerifyOptions& options = {});
// f(D) <= f(D u {s}).
PropertyResult check_monotone(const AllocationProblem& problem, const VerifyOptions& options = {});
// Extracted P1 strategy is sound on DSWin_D for every enumerated D.
PropertyResult check_strategies(const AllocationProblem& problem, const VerifyOptions& options = {});

struct VerifyReport {
  std::vector<PropertyResult> properties;
  std::optional<Theorem1Report> theorem1;
  bool passed() const;
};

VerifyReport verify_instance(const AllocationProblem& problem, const VerifyOptions& options = {});

}  // namespace decoy
