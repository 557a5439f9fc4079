#pragma once
// Arena x DFA product games: the hypergame on graph (both players' views on
// one graph, DFA driven by the attacker's perceived labels) and the
// defender's deceptive reachability game.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "decoy/arena.hpp"
#include "decoy/logic/dfa.hpp"
#include "decoy/state_set.hpp"

namespace decoy {

using logic::Dfa;
using logic::DfaState;

// Product state index = s * |Q| + q. Cheap to copy; the graph is shared.
class ProductGame {
 public:
  const Arena& arena() const { return *data_->arena; }
  const Dfa& dfa() const { return *data_->dfa; }

  std::size_t num_states() const { return data_->num_arena * data_->num_q; }
  std::size_t num_q() const { return data_->num_q; }
  StateIndex index(StateIndex s, DfaState q) const {
    return static_cast<StateIndex>(s * data_->num_q + q);
  }
  StateIndex arena_state(StateIndex v) const { return static_cast<StateIndex>(v / data_->num_q); }
  DfaState dfa_state(StateIndex v) const { return static_cast<DfaState>(v % data_->num_q); }
  Player owner(StateIndex v) const { return arena().owner(arena_state(v)); }

  std::span<const Move> moves(StateIndex v) const {
    return {data_->moves.data() + data_->offsets[v], data_->moves.data() + data_->offsets[v + 1]};
  }
  std::optional<StateIndex> successor(StateIndex v, ActionIndex a) const;

  // States with an accepting DFA component.
  const StateSet& f2() const { return data_->f2; }
  // States whose arena state carries the ground-truth `decoy` label.
  const StateSet& fd() const { return fd_; }

  // (s0, delta(iota, L2(s0))).
  StateIndex initial_of(StateIndex s) const;

  // "(s, q)"
  std::string name(StateIndex v) const;
  std::optional<StateIndex> find(std::string_view s, std::string_view q) const;
  // Throws InputError when either id is unknown.
  StateIndex at(std::string_view s, std::string_view q) const;

  // Same graph, FD recomputed for a different set of decoy arena states.
  ProductGame with_decoy_states(std::span<const StateIndex> decoys) const;

 private:
  struct Data {
    std::shared_ptr<const Arena> arena;
    std::shared_ptr<const Dfa> dfa;
    std::size_t num_arena = 0;
    std::size_t num_q = 0;
    std::vector<std::uint32_t> offsets;
    std::vector<Move> moves;
    std::vector<DfaState> perceived_step;  // [q * |S| + s'] = delta(q, L2(s'))
    StateSet f2;
  };
  friend ProductGame build_hypergame(const Arena&, const Dfa&, std::span<const StateIndex>);

  std::shared_ptr<const Data> data_;
  StateSet fd_;
};

// Hypergame on graph for decoys D (added to any decoys already labeled in the
// arena). The graph does not depend on D; only fd() does. Throws InputError if
// the DFA mentions a proposition missing from the arena.
ProductGame build_hypergame(const Arena& arena, const Dfa& dfa, std::span<const StateIndex> decoys = {});
ProductGame build_hypergame(const Arena& arena, const Dfa& dfa, std::span<const std::string> decoys);

// States forward-reachable from the initial product states that are either
// initial or can still reach F2 or `extra_targets`. This is the state set the
// figures draw and the default allocation counting domain.
StateSet visible_states(const ProductGame& game, const StateSet& extra_targets);
StateSet visible_states(const ProductGame& game);

// Subjectively rationalizable actions of player i at v given player i's
// winning region in the attacker's perceptual game.
std::vector<ActionIndex> sr_actions(const ProductGame& game, const StateSet& win_i, StateIndex v,
                                    Player i);

// Defender's deceptive reachability game. Indices match the product game;
// only members of states() take part.
class DeceptiveGame {
 public:
  const ProductGame& product() const { return data_->product; }
  std::size_t universe() const { return data_->product.num_states(); }

  // Win_2^2: the attacker's perceived winning region.
  const StateSet& states() const { return data_->win2_2; }
  // F2 within states(); every action self-loops.
  const StateSet& sinks() const { return data_->sinks; }
  // FD within states(), as carried over from the hypergame.
  const StateSet& fd() const { return fd_; }
  // Effective reachability target: fd() minus sinks.
  const StateSet& targets() const { return targets_; }

  std::span<const Move> moves(StateIndex v) const {
    return {data_->moves.data() + data_->offsets[v], data_->moves.data() + data_->offsets[v + 1]};
  }
  std::size_t num_moves() const { return data_->moves.size(); }

  // Same pruned graph, targets for another decoy set.
  DeceptiveGame with_decoy_states(std::span<const StateIndex> decoys) const;
  // Same pruned graph with FD = arbitrary target set (restricted to states()).
  DeceptiveGame with_fd(const StateSet& fd) const;

 private:
  struct Data {
    ProductGame product;
    StateSet win2_2;
    StateSet sinks;
    std::vector<std::uint32_t> offsets;
    std::vector<Move> moves;
  };
  friend DeceptiveGame build_deceptive_game(const ProductGame&, const StateSet&);

  std::shared_ptr<const Data> data_;
  StateSet fd_;
  StateSet targets_;
};

// Restricts the hypergame to win2_2, keeps SR actions (P2 from Win_2^2, P1 from
// Win_1^2 = complement), and turns F2 states into sinks.
DeceptiveGame build_deceptive_game(const ProductGame& hypergame, const StateSet& win2_2);

}  // namespace decoy
