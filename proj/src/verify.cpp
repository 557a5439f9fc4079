#include "decoy/verify.hpp"

#include <algorithm>

#include "decoy/error.hpp"

namespace decoy {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

void fail(PropertyResult& r, std::string witness) {
  r.passed = false;
  if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back(std::move(witness));
}

std::string set_name(const AllocationProblem& p, std::span<const StateIndex> d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + p.arena().state_id(d[i]);
  return s + "}";
}

std::vector<StateIndex> subset(const AllocationProblem& p, std::uint64_t mask) {
  std::vector<StateIndex> out;
  for (std::size_t i = 0; i < p.candidates().size(); ++i)
    if (mask >> i & 1u) out.push_back(p.candidates()[i]);
  return out;
}

std::uint64_t subset_count(const AllocationProblem& p, const VerifyOptions& o) {
  const std::size_t n = p.candidates().size();
  if (n >= 63 || (std::uint64_t{1} << n) > o.subset_cap)
    throw ResourceCapExceeded("verification needs 2^" + std::to_string(n) + " subsets, above the cap");
  return std::uint64_t{1} << n;
}

}  // namespace

SoundnessResult check_reach_strategy(const GameGraph& g, const StateSet& target, const StateSet& forbidden,
                                     const Strategy& strategy, const StateSet& from) {
  enum : std::uint8_t { unseen, active, good };
  const std::size_t n = g.universe();
  std::vector<std::uint8_t> mark(n, unseen);
  std::vector<std::size_t> depth(n, 0);
  SoundnessResult res;

  // iterative DFS over the strategy-restricted graph; a back edge is a play
  // that never reaches the target
  struct Frame {
    StateIndex v;
    std::size_t next;  // next successor position
  };
  std::vector<Frame> stack;
  std::vector<StateIndex> succ;

  auto successors = [&](StateIndex v, std::vector<StateIndex>& out) -> std::string {
    out.clear();
    if (g.reacher_owns(v)) {
      const auto it = strategy.choice.find(v);
      if (it == strategy.choice.end()) return "strategy undefined at a reacher state";
      for (const Move& m : g.moves(v))
        if (m.action == it->second) {
          out.push_back(m.to);
          return {};
        }
      return "strategy picks an action that is not enabled";
    }
    for (const Move& m : g.moves(v)) out.push_back(m.to);
    if (out.empty()) return "avoider state without moves";
    return {};
  };

  auto failure = [&](StateIndex last, std::string why) {
    res.ok = false;
    res.reason = std::move(why);
    for (const Frame& f : stack) res.play.push_back(f.v);
    if (res.play.empty() || res.play.back() != last) res.play.push_back(last);
  };

  // target is checked first: a state can be both, and reaching it ends the play
  auto leaf = [&](StateIndex v) -> std::optional<std::string> {
    if (target.contains(v)) return std::nullopt;
    if (forbidden.contains(v)) return std::string("play enters a forbidden state");
    if (!g.states().contains(v)) return std::string("play leaves the game");
    return std::string();
  };

  std::vector<std::vector<StateIndex>> succ_of(n);
  bool bad = false;
  from.for_each([&](StateIndex start) {
    if (bad) return;
    ++res.checked;
    if (mark[start] == good) return;
    auto enter = [&](StateIndex v) -> bool {
      const auto l = leaf(v);
      if (!l) {
        mark[v] = good;
        depth[v] = 0;
        return true;
      }
      if (!l->empty()) {
        failure(v, *l);
        return false;
      }
      const std::string why = successors(v, succ_of[v]);
      if (!why.empty()) {
        failure(v, why);
        return false;
      }
      mark[v] = active;
      stack.push_back({v, 0});
      return true;
    };
    if (!enter(start)) {
      bad = true;
      return;
    }
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& ss = succ_of[f.v];
      if (f.next == ss.size()) {
        std::size_t d = 0;
        for (StateIndex w : ss) d = std::max(d, depth[w] + 1);
        depth[f.v] = d;
        mark[f.v] = good;
        stack.pop_back();
        continue;
      }
      const StateIndex w = ss[f.next++];
      if (mark[w] == good) continue;
      if (mark[w] == active) {
        failure(w, "cycle avoiding the target");
        bad = true;
        return;
      }
      if (!enter(w)) {
        bad = true;
        return;
      }
    }
    res.max_steps = std::max(res.max_steps, depth[start]);
  });
  if (res.ok && res.max_steps > g.states().size()) {
    res.ok = false;
    res.reason = "play longer than the number of states";
  }
  return res;
}

SoundnessResult check_deceptive_strategy(const DeceptiveGame& game, const Region& dswin, const Strategy& strategy) {
  return check_reach_strategy(GameGraph::from_deceptive(game), game.targets(), game.sinks(), strategy, dswin.members);
}

bool tamper_strategy(const GameGraph& g, const Region& region, Strategy& strategy) {
  // prefer a move out of the region; fall back to one that does not lower the rank
  for (const bool leave : {true, false}) {
    for (auto& [v, a] : strategy.choice) {
      for (const Move& m : g.moves(v)) {
        if (m.action == a) continue;
        const bool outside = !region.contains(m.to);
        if (leave ? outside : region.level(m.to) >= region.level(v)) {
          a = m.action;
          return true;
        }
      }
    }
  }
  return false;
}

PropertyResult check_composition(const AllocationProblem& p) {
  PropertyResult r{"composition-equivalence", true, 0, {}, {}};
  const auto& c = p.candidates();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Region composed = compose(p.graph(), p.singleton(i).members, p.singleton(j).members);
      const StateIndex d[] = {c[i], c[j]};
      ++r.checked;
      if (!(composed.members == p.dswin_direct(d).members)) fail(r, "pair " + set_name(p, d));
    }
  }
  const AllocationResult g = greedy_max(p);
  StateSet acc(p.game().universe());
  std::vector<StateIndex> prefix;
  for (StateIndex s : g.chosen_states) {
    const auto pos = std::find(c.begin(), c.end(), s) - c.begin();
    acc = compose(p.graph(), acc, p.singleton(pos).members).members;
    prefix.push_back(s);
    ++r.checked;
    if (!(acc == p.dswin_direct(prefix).members)) fail(r, "greedy prefix " + set_name(p, prefix));
  }
  return r;
}

PropertyResult check_containment(const AllocationProblem& p, const VerifyOptions& o) {
  PropertyResult r{"containment", true, 0, {}, {}};
  const std::uint64_t total = subset_count(p, o);
  std::vector<StateSet> reg(total);
  for (std::uint64_t m = 0; m < total; ++m) reg[m] = p.dswin_for(subset(p, m)).members;
  for (std::uint64_t m = 0; m < total; ++m)
    for (std::size_t i = 0; i < p.candidates().size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (m & bit) continue;
      ++r.checked;
      if (!(reg[m] | reg[bit]).is_subset_of(reg[m | bit]))
        fail(r, "D = " + set_name(p, subset(p, m)) + ", s = " + p.arena().state_id(p.candidates()[i]));
    }
  return r;
}

PropertyResult check_union_bound(const AllocationProblem& p, const VerifyOptions& o) {
  PropertyResult r{"union-bound", true, 0, {}, {}};
  const std::uint64_t total = subset_count(p, o);
  for (std::uint64_t m = 0; m < total; ++m) {
    StateSet uni(p.game().universe());
    for (std::size_t i = 0; i < p.candidates().size(); ++i)
      if (m >> i & 1u) uni |= p.singleton(i).members;
    const auto d = subset(p, m);
    const std::size_t f_cup = p.objective(uni);
    const std::size_t f_comp = p.objective(p.dswin_for(d).members);
    ++r.checked;
    if (f_cup > f_comp)
      fail(r, "D = " + set_name(p, d) + ": " + std::to_string(f_cup) + " > " + std::to_string(f_comp));
  }
  return r;
}

PropertyResult check_monotone(const AllocationProblem& p, const VerifyOptions& o) {
  PropertyResult r{"monotone", true, 0, {}, {}};
  const std::uint64_t total = subset_count(p, o);
  std::vector<std::size_t> f(total);
  for (std::uint64_t m = 0; m < total; ++m) f[m] = p.objective(p.dswin_for(subset(p, m)).members);
  for (std::uint64_t m = 0; m < total; ++m)
    for (std::size_t i = 0; i < p.candidates().size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (m & bit) continue;
      ++r.checked;
      if (f[m] > f[m | bit])
        fail(r, "D = " + set_name(p, subset(p, m)) + ", s = " + p.arena().state_id(p.candidates()[i]));
    }
  return r;
}

PropertyResult check_strategies(const AllocationProblem& p, const VerifyOptions& o) {
  PropertyResult r{"strategy-soundness", true, 0, {}, {}};
  const std::uint64_t total = subset_count(p, o);
  bool tampered = false;
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto d = subset(p, m);
    const StateSet target = p.targets_for(d);
    const WinRegions w = sure_win(p.graph(), target);
    Strategy s = extract_strategy(p.graph(), target, w).reacher;
    if (o.tamper && !tampered) tampered = tamper_strategy(p.graph(), w.reacher, s);
    const SoundnessResult res = check_reach_strategy(p.graph(), target, p.game().sinks(), s, w.reacher.members);
    r.checked += res.checked;
    if (!res.ok) {
      std::string play;
      for (StateIndex v : res.play) play += (play.empty() ? "" : " -> ") + p.product().name(v);
      fail(r, "D = " + set_name(p, d) + ": " + res.reason + ": " + play);
    }
  }
  if (o.tamper) r.note = tampered ? "strategy tampered" : "no tamperable choice found";
  return r;
}

bool VerifyReport::passed() const {
  if (!std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; })) return false;
  return !theorem1 || theorem1->monotone.holds;
}

VerifyReport verify_instance(const AllocationProblem& p, const VerifyOptions& o) {
  VerifyReport rep;
  rep.properties.push_back(check_composition(p));
  rep.properties.push_back(check_containment(p, o));
  rep.properties.push_back(check_union_bound(p, o));
  rep.properties.push_back(check_monotone(p, o));
  rep.properties.push_back(check_strategies(p, o));
  rep.theorem1 = check_theorem1(p);
  return rep;
}

}  // namespace decoy
