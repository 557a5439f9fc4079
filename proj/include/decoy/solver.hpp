#pragma once
// Zero-sum reachability games: attractor fixpoint, winning regions, and
// deterministic memoryless strategies.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "decoy/product.hpp"
#include "decoy/state_set.hpp"

namespace decoy {

// Role-parametric game graph: the reacher tries to reach a target, the
// avoider tries to stay away from it forever. Moves must stay inside states().
class GameGraph {
 public:
  GameGraph(StateSet states, StateSet reacher_owned, std::vector<std::uint32_t> offsets,
            std::vector<Move> moves);

  // Attacker's perceptual game with `reacher` as the reaching player.
  static GameGraph from_product(const ProductGame& game, Player reacher);
  // Deceptive game, reacher = P1.
  static GameGraph from_deceptive(const DeceptiveGame& game);

  std::size_t universe() const { return states_.universe(); }
  const StateSet& states() const { return states_; }
  bool reacher_owns(StateIndex v) const { return reacher_.contains(v); }
  const StateSet& reacher_owned() const { return reacher_; }

  std::span<const Move> moves(StateIndex v) const {
    return {moves_.data() + offsets_[v], moves_.data() + offsets_[v + 1]};
  }
  std::span<const StateIndex> predecessors(StateIndex v) const {
    return {preds_.data() + pred_offsets_[v], preds_.data() + pred_offsets_[v + 1]};
  }
  std::size_t num_moves() const { return moves_.size(); }

 private:
  StateSet states_;
  StateSet reacher_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Move> moves_;
  std::vector<std::uint32_t> pred_offsets_;
  std::vector<StateIndex> preds_;  // one entry per move, so duplicates are kept
};

struct GameView {
  std::shared_ptr<const GameGraph> graph;
  StateSet target;
};

// members plus the attractor iteration at which each member was added
// (0 for the target); -1 for non-members and for avoider regions.
struct Region {
  StateSet members;
  std::vector<std::int32_t> levels;

  bool contains(StateIndex v) const { return members.contains(v); }
  std::size_t size() const { return members.size(); }
  std::int32_t level(StateIndex v) const { return levels.empty() ? -1 : levels[v]; }
};

struct WinRegions {
  Region reacher;
  Region avoider;
};

struct Strategy {
  enum class Role { reacher, avoider };
  Role role;
  std::map<StateIndex, ActionIndex> choice;
};

struct StrategyPair {
  Strategy reacher;
  Strategy avoider;
};

// Least fixpoint of Z <- Z u Pre_reach(Z) u Pre_avoid(Z), computed by backward
// induction with per-state outdegree counters. Throws InputError if the target
// leaves states() or an avoider state has no move.
WinRegions sure_win(const GameGraph& graph, const StateSet& target);
WinRegions sure_win(const GameView& view);

// Reacher: at each winning reacher state outside the target, the move with the
// smallest successor level (ties by action order). Avoider: at each
// avoider-winning avoider state, the first move staying in the avoider region.
StrategyPair extract_strategy(const GameGraph& graph, const StateSet& target, const WinRegions& regions);
StrategyPair extract_strategy(const GameView& view, const WinRegions& regions);

struct PerceptualRegions {
  Region win1_2;  // defender wins in the attacker's view
  Region win2_2;  // attacker wins in the attacker's view
};

// Solves the attacker's perceptual product game with V1 := S2 x Q, F := F2.
// FD is ignored.
PerceptualRegions attacker_perceptual_regions(const ProductGame& game);

// Defender's deceptive sure-winning region with F := effective FD.
Region dswin(const DeceptiveGame& game);

}  // namespace decoy
