#include "decoy/product.hpp"

#include <algorithm>
#include <queue>

#include "decoy/error.hpp"

namespace decoy {

std::optional<StateIndex> ProductGame::successor(StateIndex v, ActionIndex a) const {
  for (const Move& m : moves(v))
    if (m.action == a) return m.to;
  return std::nullopt;
}

StateIndex ProductGame::initial_of(StateIndex s) const {
  return index(s, data_->perceived_step[dfa().initial() * data_->num_arena + s]);
}

std::string ProductGame::name(StateIndex v) const {
  return "(" + arena().state_id(arena_state(v)) + ", " + dfa().state_id(dfa_state(v)) + ")";
}

std::optional<StateIndex> ProductGame::find(std::string_view s, std::string_view q) const {
  const auto si = arena().find_state(s);
  const auto qi = dfa().find_state(q);
  if (!si || !qi) return std::nullopt;
  return index(*si, *qi);
}

StateIndex ProductGame::at(std::string_view s, std::string_view q) const {
  if (auto v = find(s, q)) return *v;
  throw InputError("unknown product state (" + std::string(s) + ", " + std::string(q) + ")");
}

ProductGame ProductGame::with_decoy_states(std::span<const StateIndex> decoys) const {
  ProductGame out = *this;
  out.fd_ = StateSet(num_states());
  for (StateIndex s : decoys) {
    if (s >= data_->num_arena) throw InputError("decoy state index out of range");
    for (DfaState q = 0; q < data_->num_q; ++q) out.fd_.insert(index(s, q));
  }
  return out;
}

ProductGame build_hypergame(const Arena& arena, const Dfa& dfa, std::span<const StateIndex> decoys) {
  for (const auto& p : dfa.alphabet())
    if (!arena.has_ap(p) || p == kDecoyProp)
      throw InputError("proposition mismatch: DFA guard mentions '" + p + "' which is not an arena proposition");

  auto data = std::make_shared<ProductGame::Data>();
  data->arena = std::make_shared<const Arena>(with_decoys(arena, decoys));
  data->dfa = std::make_shared<const Dfa>(dfa);
  const Arena& a = *data->arena;
  const std::size_t ns = a.num_states();
  const std::size_t nq = dfa.num_states();
  data->num_arena = ns;
  data->num_q = nq;

  // The attacker's DFA only ever sees L2 = L \ {decoy}.
  std::vector<std::uint32_t> letter(ns);
  for (StateIndex s = 0; s < ns; ++s) letter[s] = dfa.encode(perceived_label(a, s));
  data->perceived_step.resize(nq * ns);
  for (DfaState q = 0; q < nq; ++q)
    for (StateIndex s = 0; s < ns; ++s) data->perceived_step[q * ns + s] = dfa.step_mask(q, letter[s]);

  data->offsets.reserve(ns * nq + 1);
  data->offsets.push_back(0);
  data->moves.reserve(a.num_transitions() * nq);
  data->f2 = StateSet(ns * nq);
  for (StateIndex s = 0; s < ns; ++s) {
    for (DfaState q = 0; q < nq; ++q) {
      if (dfa.is_accepting(q)) data->f2.insert(static_cast<StateIndex>(s * nq + q));
      for (const Move& m : a.moves(s)) {
        const DfaState q2 = data->perceived_step[q * ns + m.to];
        data->moves.push_back({m.action, static_cast<StateIndex>(m.to * nq + q2)});
      }
      data->offsets.push_back(static_cast<std::uint32_t>(data->moves.size()));
    }
  }

  ProductGame g;
  g.data_ = std::move(data);
  const auto ds = decoy_states(g.arena());
  g.fd_ = StateSet(g.num_states());
  for (StateIndex s : ds)
    for (DfaState q = 0; q < nq; ++q) g.fd_.insert(g.index(s, q));
  return g;
}

ProductGame build_hypergame(const Arena& arena, const Dfa& dfa, std::span<const std::string> decoys) {
  std::vector<StateIndex> idx;
  for (const auto& id : decoys) idx.push_back(arena.state_index(id));
  return build_hypergame(arena, dfa, std::span<const StateIndex>(idx));
}

StateSet visible_states(const ProductGame& game, const StateSet& extra_targets) {
  const std::size_t n = game.num_states();
  StateSet init(n);
  for (StateIndex s : game.arena().initial_states()) init.insert(game.initial_of(s));

  StateSet forward = init;
  std::queue<StateIndex> work;
  init.for_each([&](StateIndex v) { work.push(v); });
  while (!work.empty()) {
    const StateIndex v = work.front();
    work.pop();
    for (const Move& m : game.moves(v))
      if (!forward.contains(m.to)) {
        forward.insert(m.to);
        work.push(m.to);
      }
  }

  std::vector<std::vector<StateIndex>> preds(n);
  for (StateIndex v = 0; v < n; ++v)
    for (const Move& m : game.moves(v)) preds[m.to].push_back(v);
  StateSet backward = game.f2() | extra_targets;
  backward.for_each([&](StateIndex v) { work.push(v); });
  while (!work.empty()) {
    const StateIndex v = work.front();
    work.pop();
    for (StateIndex u : preds[v])
      if (!backward.contains(u)) {
        backward.insert(u);
        work.push(u);
      }
  }
  return forward & (backward | init);
}

StateSet visible_states(const ProductGame& game) { return visible_states(game, StateSet(game.num_states())); }

std::vector<ActionIndex> sr_actions(const ProductGame& game, const StateSet& win_i, StateIndex v, Player i) {
  if (v >= game.num_states()) throw InputError("sr_actions: state index out of range");
  if (win_i.universe() != game.num_states()) throw InputError("sr_actions: region universe mismatch");
  if (game.owner(v) != i) throw InputError("sr_actions: " + game.name(v) + " is not owned by that player");
  std::vector<ActionIndex> out;
  const bool winning = win_i.contains(v);
  for (const Move& m : game.moves(v))
    if (!winning || win_i.contains(m.to)) out.push_back(m.action);
  return out;
}

// ---------------------------------------------------------------------------

DeceptiveGame DeceptiveGame::with_fd(const StateSet& fd) const {
  if (fd.universe() != universe()) throw InputError("target set universe mismatch");
  DeceptiveGame out = *this;
  out.fd_ = fd & states();
  out.targets_ = out.fd_ - sinks();
  return out;
}

DeceptiveGame DeceptiveGame::with_decoy_states(std::span<const StateIndex> decoys) const {
  return with_fd(product().with_decoy_states(decoys).fd());
}

DeceptiveGame build_deceptive_game(const ProductGame& hypergame, const StateSet& win2_2) {
  const std::size_t n = hypergame.num_states();
  if (win2_2.universe() != n) throw InputError("win2_2 does not range over the hypergame's states");

  auto data = std::make_shared<DeceptiveGame::Data>();
  data->product = hypergame;
  data->win2_2 = win2_2;
  data->sinks = hypergame.f2() & win2_2;
  const StateSet win1_2 = win2_2.complement();

  data->offsets.reserve(n + 1);
  data->offsets.push_back(0);
  for (StateIndex v = 0; v < n; ++v) {
    if (win2_2.contains(v)) {
      if (data->sinks.contains(v)) {
        for (const Move& m : hypergame.moves(v)) data->moves.push_back({m.action, v});
      } else {
        const Player who = hypergame.owner(v);
        const StateSet& win = who == Player::P2 ? win2_2 : win1_2;
        const bool winning = win.contains(v);
        for (const Move& m : hypergame.moves(v)) {
          if (winning && !win.contains(m.to)) continue;  // not subjectively rationalizable
          if (!win2_2.contains(m.to)) continue;          // leaves the game's state space
          data->moves.push_back(m);
        }
      }
    }
    data->offsets.push_back(static_cast<std::uint32_t>(data->moves.size()));
  }

  DeceptiveGame g;
  g.data_ = std::move(data);
  g.fd_ = hypergame.fd() & win2_2;
  g.targets_ = g.fd_ - g.data_->sinks;
  return g;
}

}  // namespace decoy
