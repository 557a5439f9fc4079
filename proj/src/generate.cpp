#include "decoy/generate.hpp"

#include <algorithm>

#include "decoy/logic/scltl.hpp"

namespace decoy {

namespace {

std::vector<std::string> prop_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

Arena random_arena(const ArenaParams& p, Rng& rng) {
  ArenaBuilder b;
  const auto props = prop_names(p.aps);
  for (const auto& a : props) b.add_ap(a);
  const auto sid = [](std::size_t i) { return "s" + std::to_string(i); };
  std::vector<Player> owner(p.states);
  for (std::size_t i = 0; i < p.states; ++i) {
    owner[i] = rng.chance(p.attacker_percent, 100) ? Player::P2 : Player::P1;
    std::vector<std::string> labels;
    for (const auto& a : props)
      if (rng.chance(p.label_percent, 100)) labels.push_back(a);
    b.add_state(sid(i), owner[i], std::move(labels));
  }
  for (std::size_t i = 0; i < p.states; ++i) {
    const std::size_t deg = rng.between(1, std::max<std::size_t>(1, p.branching));
    for (std::size_t j : sample_distinct(rng, p.states, deg)) {
      const std::string act = sid(i) + "->" + sid(j);
      b.add_action(act, owner[i]);
      b.add_transition(sid(i), act, sid(j));
    }
  }
  return b.build();
}

logic::Dfa random_dfa(const std::vector<std::string>& props, std::size_t n, Rng& rng) {
  n = std::max<std::size_t>(n, 2);
  const std::size_t letters = std::size_t{1} << props.size();
  std::vector<std::string> ids;
  for (std::size_t q = 0; q < n; ++q) ids.push_back("q" + std::to_string(q));
  const auto acc = static_cast<logic::DfaState>(n - 1);

  std::vector<logic::DfaEdge> edges;
  for (logic::DfaState q = 0; q < acc; ++q) {
    std::vector<std::size_t> dest(letters);
    for (std::size_t m = 0; m < letters; ++m) {
      // the empty letter keeps its state so unlabeled stretches do not
      // progress; other letters only move forward, as in a co-safety monitor
      if (m == 0 || rng.chance(1, 3)) dest[m] = q;
      else dest[m] = rng.between(q, n - 1);
    }
    for (logic::DfaState t = 0; t < n; ++t) {
      std::vector<bool> table(letters);
      bool any = false;
      for (std::size_t m = 0; m < letters; ++m) any |= (table[m] = dest[m] == t);
      if (any) edges.push_back({q, logic::guard_from_truth_table(props, table), t});
    }
  }
  edges.push_back({acc, logic::Guard::truth(), acc});
  return logic::Dfa::create(ids, 0, {acc}, std::move(edges));
}

Instance random_instance(const InstanceParams& p, std::uint64_t seed) {
  Rng rng(seed);
  ArenaParams ap;
  ap.states = rng.between(p.min_states, p.max_states);
  ap.branching = p.branching;
  ap.aps = p.aps;
  ap.label_percent = p.label_percent;
  ap.attacker_percent = p.attacker_percent;
  Arena arena = random_arena(ap, rng);
  logic::Dfa dfa = random_dfa(arena.aps(), rng.between(p.min_dfa_states, p.max_dfa_states), rng);
  std::vector<std::string> cands;
  for (std::size_t i : sample_distinct(rng, arena.num_states(), p.candidates)) cands.push_back(arena.state_id(i));
  return {std::move(arena), std::move(dfa), std::move(cands), p.k};
}

Instance scalability_instance(std::size_t product_states, std::uint64_t seed) {
  Rng rng(seed);
  ArenaParams ap;
  ap.states = std::max<std::size_t>(product_states / 4, 20);
  ap.branching = 3;
  ap.aps = 2;
  ap.label_percent = 5;
  Arena arena = random_arena(ap, rng);
  logic::Dfa dfa = logic::to_dfa(logic::parse_scltl("F p0 & F p1"), arena.aps());
  std::vector<std::string> cands;
  for (std::size_t i : sample_distinct(rng, arena.num_states(), 20)) cands.push_back(arena.state_id(i));
  return {std::move(arena), std::move(dfa), std::move(cands), 5};
}

}  // namespace decoy
