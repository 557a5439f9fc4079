#include "decoy/solver.hpp"

#include <algorithm>

#include "decoy/error.hpp"

namespace decoy {

GameGraph::GameGraph(StateSet states, StateSet reacher_owned, std::vector<std::uint32_t> offsets,
                     std::vector<Move> moves)
    : states_(std::move(states)),
      reacher_(std::move(reacher_owned)),
      offsets_(std::move(offsets)),
      moves_(std::move(moves)) {
  const std::size_t n = states_.universe();
  if (reacher_.universe() != n) throw InputError("game graph: owner set universe mismatch");
  if (!reacher_.is_subset_of(states_)) throw InputError("game graph: reacher states outside the game");
  if (offsets_.size() != n + 1 || offsets_.back() != moves_.size())
    throw InputError("game graph: malformed move table");

  std::vector<std::uint32_t> indeg(n, 0);
  for (StateIndex v = 0; v < n; ++v) {
    if (!states_.contains(v) && offsets_[v] != offsets_[v + 1])
      throw InputError("game graph: moves recorded for a state outside the game");
    for (const Move& m : this->moves(v)) {
      if (m.to >= n || !states_.contains(m.to)) throw InputError("game graph: move leaves the game");
      ++indeg[m.to];
    }
  }
  pred_offsets_.assign(n + 1, 0);
  for (StateIndex v = 0; v < n; ++v) pred_offsets_[v + 1] = pred_offsets_[v] + indeg[v];
  preds_.resize(moves_.size());
  std::vector<std::uint32_t> fill(pred_offsets_.begin(), pred_offsets_.end() - 1);
  for (StateIndex v = 0; v < n; ++v)
    for (const Move& m : this->moves(v)) preds_[fill[m.to]++] = v;
}

GameGraph GameGraph::from_product(const ProductGame& game, Player reacher) {
  const std::size_t n = game.num_states();
  StateSet owned(n);
  std::vector<std::uint32_t> offsets{0};
  std::vector<Move> moves;
  offsets.reserve(n + 1);
  for (StateIndex v = 0; v < n; ++v) {
    if (game.owner(v) == reacher) owned.insert(v);
    const auto ms = game.moves(v);
    moves.insert(moves.end(), ms.begin(), ms.end());
    offsets.push_back(static_cast<std::uint32_t>(moves.size()));
  }
  return GameGraph(StateSet::full(n), std::move(owned), std::move(offsets), std::move(moves));
}

GameGraph GameGraph::from_deceptive(const DeceptiveGame& game) {
  const std::size_t n = game.universe();
  StateSet owned(n);
  std::vector<std::uint32_t> offsets{0};
  std::vector<Move> moves;
  offsets.reserve(n + 1);
  for (StateIndex v = 0; v < n; ++v) {
    if (game.states().contains(v) && game.product().owner(v) == Player::P1) owned.insert(v);
    const auto ms = game.moves(v);
    moves.insert(moves.end(), ms.begin(), ms.end());
    offsets.push_back(static_cast<std::uint32_t>(moves.size()));
  }
  return GameGraph(game.states(), std::move(owned), std::move(offsets), std::move(moves));
}

WinRegions sure_win(const GameGraph& g, const StateSet& target) {
  const std::size_t n = g.universe();
  if (target.universe() != n || !target.is_subset_of(g.states()))
    throw InputError("sure_win: target is not a subset of the game's states");

  std::vector<std::uint32_t> remaining(n, 0);
  g.states().for_each([&](StateIndex v) {
    remaining[v] = static_cast<std::uint32_t>(g.moves(v).size());
    if (remaining[v] == 0 && !g.reacher_owns(v))
      throw InputError("sure_win: avoider state has no enabled move");
  });

  WinRegions out;
  out.reacher.members = target;
  out.reacher.levels.assign(n, -1);
  std::vector<StateIndex> frontier = target.members();
  for (StateIndex v : frontier) out.reacher.levels[v] = 0;

  std::int32_t level = 0;
  std::vector<StateIndex> next;
  while (!frontier.empty()) {
    next.clear();
    for (StateIndex v : frontier) {
      for (StateIndex u : g.predecessors(v)) {
        if (out.reacher.members.contains(u)) continue;
        if (!g.reacher_owns(u) && --remaining[u] != 0) continue;
        out.reacher.members.insert(u);
        out.reacher.levels[u] = level + 1;
        next.push_back(u);
      }
    }
    frontier.swap(next);
    ++level;
  }

  out.avoider.members = g.states() - out.reacher.members;
  return out;
}

WinRegions sure_win(const GameView& view) { return sure_win(*view.graph, view.target); }

StrategyPair extract_strategy(const GameGraph& g, const StateSet& target, const WinRegions& regions) {
  StrategyPair out{{Strategy::Role::reacher, {}}, {Strategy::Role::avoider, {}}};
  const Region& win = regions.reacher;
  (win.members - target).for_each([&](StateIndex v) {
    if (!g.reacher_owns(v)) return;
    const std::int32_t rank = win.level(v);
    const Move* best = nullptr;
    for (const Move& m : g.moves(v)) {
      if (!win.contains(m.to)) continue;
      const std::int32_t r = win.level(m.to);
      if (r < 0 || r >= rank) continue;
      if (!best || r < win.level(best->to)) best = &m;
    }
    if (!best)
      throw InternalError("strategy extraction: no rank-decreasing move at winning state " + std::to_string(v));
    out.reacher.choice.emplace(v, best->action);
  });

  const Region& lose = regions.avoider;
  lose.members.for_each([&](StateIndex v) {
    if (g.reacher_owns(v)) return;
    for (const Move& m : g.moves(v)) {
      if (lose.contains(m.to)) {
        out.avoider.choice.emplace(v, m.action);
        return;
      }
    }
    throw InternalError("strategy extraction: avoider state " + std::to_string(v) +
                        " has no move staying in its region");
  });
  return out;
}

StrategyPair extract_strategy(const GameView& view, const WinRegions& regions) {
  return extract_strategy(*view.graph, view.target, regions);
}

PerceptualRegions attacker_perceptual_regions(const ProductGame& game) {
  const GameGraph g = GameGraph::from_product(game, Player::P2);
  WinRegions w = sure_win(g, game.f2());
  return {std::move(w.avoider), std::move(w.reacher)};
}

Region dswin(const DeceptiveGame& game) {
  const GameGraph g = GameGraph::from_deceptive(game);
  return sure_win(g, game.targets()).reacher;
}

}  // namespace decoy
