#pragma once
// Two-player turn-based deterministic game arenas with proposition labels.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "decoy/state_set.hpp"

namespace decoy {

enum class Player : std::uint8_t { P1 = 1, P2 = 2 };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }

// Reserved proposition marking decoy states. Never visible to P2.
inline constexpr std::string_view kDecoyProp = "decoy";

using ActionIndex = std::uint32_t;
using Valuation = std::set<std::string, std::less<>>;

struct Move {
  ActionIndex action;
  StateIndex to;
  friend bool operator==(const Move&, const Move&) = default;
};

class ArenaBuilder;

// Immutable once built. Ids are strings; every index order is document order.
class Arena {
 public:
  std::size_t num_states() const { return state_ids_.size(); }
  std::size_t num_actions() const { return action_ids_.size(); }
  std::size_t num_transitions() const { return moves_.size(); }

  const std::string& state_id(StateIndex s) const { return state_ids_.at(s); }
  std::optional<StateIndex> find_state(std::string_view id) const;
  // Throws InputError on an unknown id.
  StateIndex state_index(std::string_view id) const;

  Player owner(StateIndex s) const { return owners_.at(s); }

  const std::string& action_id(ActionIndex a) const { return action_ids_.at(a); }
  Player action_owner(ActionIndex a) const { return action_owners_.at(a); }
  std::optional<ActionIndex> find_action(std::string_view id) const;

  // Enabled moves at s, sorted by action index.
  std::span<const Move> moves(StateIndex s) const {
    return {moves_.data() + offsets_[s], moves_.data() + offsets_[s + 1]};
  }
  std::optional<StateIndex> successor(StateIndex s, ActionIndex a) const;

  const std::vector<std::string>& aps() const { return aps_; }
  bool has_ap(std::string_view p) const;

  // Ground-truth label L(s), possibly containing `decoy`.
  const Valuation& labels(StateIndex s) const { return labels_.at(s); }

  // Entry states used to trim product games for display and counting.
  // Defaults to every state when the document does not list any.
  const std::vector<StateIndex>& initial_states() const { return initial_; }
  bool has_explicit_initial() const { return explicit_initial_; }

  friend bool operator==(const Arena&, const Arena&) = default;

 private:
  friend class ArenaBuilder;
  friend Arena with_decoys(const Arena& arena, std::span<const StateIndex> decoys);
  Arena() = default;

  std::vector<std::string> state_ids_;
  std::vector<Player> owners_;
  std::vector<Valuation> labels_;
  std::vector<std::string> action_ids_;
  std::vector<Player> action_owners_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Move> moves_;
  std::vector<std::string> aps_;
  std::vector<StateIndex> initial_;
  bool explicit_initial_ = false;
  std::unordered_map<std::string, StateIndex> state_lookup_;
  std::unordered_map<std::string, ActionIndex> action_lookup_;
};

class ArenaBuilder {
 public:
  ArenaBuilder& add_ap(std::string name);
  ArenaBuilder& add_state(std::string id, Player owner, std::vector<std::string> labels = {});
  ArenaBuilder& add_action(std::string id, Player owner);
  ArenaBuilder& add_transition(std::string from, std::string action, std::string to);
  ArenaBuilder& set_initial(std::vector<std::string> ids);

  // Validates and freezes. Throws InputError naming the offending element.
  Arena build() const;

 private:
  struct StateRec {
    std::string id;
    Player owner;
    std::vector<std::string> labels;
  };
  struct TransitionRec {
    std::string from, action, to;
  };
  std::vector<std::string> aps_;
  std::vector<StateRec> states_;
  std::vector<std::pair<std::string, Player>> actions_;
  std::vector<TransitionRec> transitions_;
  std::optional<std::vector<std::string>> initial_;
};

// Arena document: {aps, states:[{id, owner, labels}], actions:[{id, owner}],
// transitions:[{from, action, to}], initial?:[ids]}.
Arena load_arena(std::string_view document);
Arena load_arena_file(const std::filesystem::path& path);
std::string dump_arena(const Arena& arena);

// L2(s) = L(s) \ {decoy}.
Valuation perceived_label(const Arena& arena, StateIndex s);
Valuation perceived_label(const Arena& arena, std::string_view state_id);

// Copy of `arena` with `decoy` added to L(s) for every s in `decoys`.
Arena with_decoys(const Arena& arena, std::span<const std::string> decoys);
Arena with_decoys(const Arena& arena, std::span<const StateIndex> decoys);

// States whose ground-truth label contains `decoy`, in index order.
std::vector<StateIndex> decoy_states(const Arena& arena);

}  // namespace decoy
