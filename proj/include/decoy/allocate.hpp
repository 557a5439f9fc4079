#pragma once
// Decoy placement: composition of deceptive regions, the greedy set-cover
// baseline, GreedyMax, an exhaustive oracle and checks of the
// monotone/submodular/supermodular conditions on a concrete instance.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "decoy/arena.hpp"
#include "decoy/logic/dfa.hpp"
#include "decoy/product.hpp"
#include "decoy/solver.hpp"

namespace decoy {

enum class Method { greedymax, setcover, exact };
enum class Counting { trimmed, full };

const char* method_name(Method m);
Method parse_method(std::string_view s);
const char* counting_name(Counting c);
Counting parse_counting(std::string_view s);

struct AllocationOptions {
  Counting counting = Counting::trimmed;
  std::uint64_t subset_cap = std::uint64_t{1} << 20;
  // Stop before the budget is spent once no candidate improves the objective.
  bool early_stop = true;
};

// Shared state for every allocation method: the deceptive game with no
// decoys, its solver graph, the candidate list and the singleton cache.
class AllocationProblem {
 public:
  // Empty `candidates` selects the default candidate set.
  AllocationProblem(const Arena& arena, const logic::Dfa& dfa, std::vector<std::string> candidates,
                    std::size_t k, AllocationOptions options = {});

  const Arena& arena() const { return *arena_; }
  const logic::Dfa& dfa() const { return *dfa_; }
  const ProductGame& product() const { return game_.product(); }
  const DeceptiveGame& game() const { return game_; }
  const GameGraph& graph() const { return *graph_; }
  const PerceptualRegions& perceptual() const { return perceptual_; }
  const AllocationOptions& options() const { return options_; }

  // Candidate arena states, in arena document order.
  const std::vector<StateIndex>& candidates() const { return candidates_; }
  std::vector<std::string> candidate_ids() const;
  std::size_t k() const { return k_; }

  // Product states that count towards the objective.
  const StateSet& count_mask() const { return count_mask_; }
  std::size_t objective(const StateSet& region) const { return region.count_in(count_mask_); }

  // Reachability target in the deceptive game when D (plus any decoys already
  // labeled in the arena) carries the decoy label.
  StateSet targets_for(std::span<const StateIndex> decoys) const;
  // DSWin for D on the shared graph.
  Region dswin_for(std::span<const StateIndex> decoys) const;
  // DSWin for D recomputed from scratch: relabel the arena, rebuild the
  // hypergame, re-solve the attacker's game and the deceptive game.
  Region dswin_direct(std::span<const StateIndex> decoys) const;

  // DSWin_{s} for the i-th candidate, computed on first use.
  const Region& singleton(std::size_t i) const;

  std::vector<std::string> ids(std::span<const StateIndex> arena_states) const;

 private:
  std::shared_ptr<const Arena> arena_;
  std::shared_ptr<const logic::Dfa> dfa_;
  AllocationOptions options_;
  PerceptualRegions perceptual_;
  DeceptiveGame game_;
  std::shared_ptr<const GameGraph> graph_;
  std::vector<StateIndex> base_decoys_;
  std::vector<StateIndex> candidates_;
  std::size_t k_;
  StateSet count_mask_;
  mutable std::vector<std::optional<Region>> singletons_;
};

// Arena states with at least one product state in Win_2^2 that also lies in
// `mask`, in document order.
std::vector<StateIndex> default_candidates(const ProductGame& game, const StateSet& win2_2, const StateSet& mask);

// P1's sure-winning region for target r1 u r2 in the deceptive game.
Region compose(const GameGraph& graph, const StateSet& r1, const StateSet& r2);
Region compose(const DeceptiveGame& game, const Region& r1, const Region& r2);

struct CandidateScore {
  std::string candidate;
  std::size_t score;
};

struct TraceStep {
  std::size_t iteration;  // 1-based
  std::vector<CandidateScore> scores;
  std::optional<std::string> chosen;
  std::size_t value_after = 0;
  std::string note;
};

struct AllocationResult {
  Method method;
  std::vector<std::string> chosen;        // selection order (sorted for exact)
  std::vector<StateIndex> chosen_states;  // same order, arena indices
  Region region;                          // DSWin of the chosen set
  std::size_t objective = 0;              // |region| under the counting mode
  std::optional<std::size_t> cover_value;  // setcover only: |union of singletons|
  std::vector<TraceStep> trace;
  std::string stop_reason;
  std::uint64_t evaluated_subsets = 0;  // exact only
  bool verified = false;                // region matched a from-scratch recomputation
};

AllocationResult greedy_max(const AllocationProblem& problem);
AllocationResult greedy_set_cover(const AllocationProblem& problem);
// Throws ResourceCapExceeded when the number of subsets exceeds the cap.
AllocationResult exact_optimal(const AllocationProblem& problem);
AllocationResult allocate(const AllocationProblem& problem, Method method);

struct Theorem1Witness {
  std::vector<std::string> base;        // D
  std::vector<std::string> added;       // s, or s1 and s2
  std::vector<std::string> states;      // offending product states, if any
  std::string detail;
};

struct Theorem1Condition {
  bool holds = true;
  std::size_t violations = 0;
  std::vector<Theorem1Witness> witnesses;  // first few only
};

struct Theorem1Report {
  std::size_t subsets = 0;
  Theorem1Condition monotone;          // f(D) <= f(D u {s})
  Theorem1Condition union_hypothesis;  // DSWin_{D u s} = DSWin_D u DSWin_s
  std::optional<Theorem1Condition> submodular;   // checked only if the hypothesis holds
  Theorem1Condition intersection_hypothesis;     // DSWin_D = DSWin_{D u s1} n DSWin_{D u s2}
  std::optional<Theorem1Condition> supermodular;  // checked only if the hypothesis holds
};

// Enumerates every D within the candidate set (integer-mask order) and every
// s, s1, s2 outside it. Throws ResourceCapExceeded beyond the subset cap.
Theorem1Report check_theorem1(const AllocationProblem& problem);

}  // namespace decoy
