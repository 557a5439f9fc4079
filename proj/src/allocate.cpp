#include "decoy/allocate.hpp"

#include <algorithm>

#include "decoy/error.hpp"

namespace decoy {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

std::vector<StateIndex> merged(std::span<const StateIndex> a, std::span<const StateIndex> b) {
  std::vector<StateIndex> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// sum_{i <= k} C(n, i), saturating at cap + 1.
std::uint64_t count_subsets(std::size_t n, std::size_t k, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(n, i)
  for (std::size_t i = 0; i <= std::min(n, k); ++i) {
    total += c;
    if (total > cap) return cap + 1;
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1); exact in 128 bits at this size
    const unsigned __int128 next = static_cast<unsigned __int128>(c) * (n - i) / (i + 1);
    if (next > cap) {
      if (i + 1 <= std::min(n, k)) return cap + 1;
      break;
    }
    c = static_cast<std::uint64_t>(next);
  }
  return total;
}

std::vector<StateIndex> chosen_from_mask(const AllocationProblem& p, std::uint64_t mask) {
  std::vector<StateIndex> out;
  for (std::size_t i = 0; i < p.candidates().size(); ++i)
    if (mask >> i & 1u) out.push_back(p.candidates()[i]);
  return out;
}

void verify_post_hoc(const AllocationProblem& p, AllocationResult& r) {
  const Region direct = p.dswin_direct(r.chosen_states);
  if (!(direct.members == r.region.members))
    throw InternalError(std::string(method_name(r.method)) +
                        ": composed region differs from a from-scratch recomputation");
  r.verified = true;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::greedymax: return "greedymax";
    case Method::setcover: return "setcover";
    case Method::exact: return "exact";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "greedymax") return Method::greedymax;
  if (s == "setcover") return Method::setcover;
  if (s == "exact") return Method::exact;
  throw InputError("unknown method '" + std::string(s) + "' (expected greedymax, setcover or exact)");
}

const char* counting_name(Counting c) { return c == Counting::trimmed ? "trimmed" : "full"; }

Counting parse_counting(std::string_view s) {
  if (s == "trimmed") return Counting::trimmed;
  if (s == "full") return Counting::full;
  throw InputError("unknown counting mode '" + std::string(s) + "' (expected trimmed or full)");
}

std::vector<StateIndex> default_candidates(const ProductGame& game, const StateSet& win2_2, const StateSet& mask) {
  std::vector<bool> hit(game.arena().num_states(), false);
  (win2_2 & mask).for_each([&](StateIndex v) { hit[game.arena_state(v)] = true; });
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < hit.size(); ++s)
    if (hit[s]) out.push_back(s);
  return out;
}

AllocationProblem::AllocationProblem(const Arena& arena, const logic::Dfa& dfa, std::vector<std::string> candidates,
                                     std::size_t k, AllocationOptions options)
    : arena_(std::make_shared<const Arena>(arena)),
      dfa_(std::make_shared<const logic::Dfa>(dfa)),
      options_(options),
      k_(k) {
  base_decoys_ = decoy_states(*arena_);
  const ProductGame pg = build_hypergame(*arena_, *dfa_);
  perceptual_ = attacker_perceptual_regions(pg);
  game_ = build_deceptive_game(pg, perceptual_.win2_2.members).with_decoy_states({});
  graph_ = std::make_shared<const GameGraph>(GameGraph::from_deceptive(game_));
  count_mask_ = options_.counting == Counting::trimmed ? visible_states(pg) : StateSet::full(pg.num_states());

  if (candidates.empty()) {
    candidates_ = default_candidates(pg, perceptual_.win2_2.members, count_mask_);
  } else {
    std::vector<bool> seen(arena_->num_states(), false);
    for (const auto& id : candidates) {
      const StateIndex s = arena_->state_index(id);
      if (seen[s]) throw InputError("duplicate candidate '" + id + "'");
      seen[s] = true;
    }
    for (StateIndex s = 0; s < seen.size(); ++s)
      if (seen[s]) candidates_.push_back(s);
  }
  if (candidates_.empty() && k_ >= 1) throw InputError("no candidates");
  if (candidates_.size() > 63) throw InputError("at most 63 candidates are supported");
  singletons_.resize(candidates_.size());
}

std::vector<std::string> AllocationProblem::ids(std::span<const StateIndex> xs) const {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (StateIndex s : xs) out.push_back(arena_->state_id(s));
  return out;
}

std::vector<std::string> AllocationProblem::candidate_ids() const { return ids(candidates_); }

StateSet AllocationProblem::targets_for(std::span<const StateIndex> decoys) const {
  const auto all = merged(base_decoys_, decoys);
  return game_.with_decoy_states(all).targets();
}

Region AllocationProblem::dswin_for(std::span<const StateIndex> decoys) const {
  return sure_win(*graph_, targets_for(decoys)).reacher;
}

Region AllocationProblem::dswin_direct(std::span<const StateIndex> decoys) const {
  const ProductGame pg = build_hypergame(*arena_, *dfa_, decoys);
  const PerceptualRegions pr = attacker_perceptual_regions(pg);
  return dswin(build_deceptive_game(pg, pr.win2_2.members));
}

const Region& AllocationProblem::singleton(std::size_t i) const {
  if (i >= candidates_.size()) throw std::out_of_range("candidate index");
  if (!singletons_[i]) {
    const StateIndex s[] = {candidates_[i]};
    singletons_[i] = dswin_for(s);
  }
  return *singletons_[i];
}

Region compose(const GameGraph& graph, const StateSet& r1, const StateSet& r2) {
  if (r1.universe() != graph.universe() || r2.universe() != graph.universe())
    throw InputError("compose: region does not range over the deceptive game");
  if (!r1.is_subset_of(graph.states()) || !r2.is_subset_of(graph.states()))
    throw InputError("compose: region contains states outside the deceptive game");
  return sure_win(graph, r1 | r2).reacher;
}

Region compose(const DeceptiveGame& game, const Region& r1, const Region& r2) {
  return compose(GameGraph::from_deceptive(game), r1.members, r2.members);
}

AllocationResult greedy_max(const AllocationProblem& p) {
  AllocationResult r{Method::greedymax, {}, {}, {}, 0, {}, {}, {}, 0, false};
  const std::size_t n = p.candidates().size();
  r.region.members = StateSet(p.game().universe());
  r.region.levels.assign(p.game().universe(), -1);
  std::vector<bool> used(n, false);

  for (std::size_t it = 1; it <= p.k(); ++it) {
    TraceStep step{it, {}, {}, r.objective, {}};
    std::optional<std::size_t> best;
    std::size_t best_score = 0;
    std::vector<std::string> tied;
    Region best_region;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      Region cand = compose(p.graph(), r.region.members, p.singleton(i).members);
      const std::size_t score = p.objective(cand.members);
      const std::string id = p.arena().state_id(p.candidates()[i]);
      step.scores.push_back({id, score});
      if (!best || score > best_score) {
        best = i;
        best_score = score;
        best_region = std::move(cand);
        tied = {id};
      } else if (score == best_score) {
        tied.push_back(id);
      }
    }
    if (!best) {
      r.stop_reason = "candidates exhausted after " + std::to_string(it - 1) + " of " + std::to_string(p.k()) + " picks";
      step.note = r.stop_reason;
      r.trace.push_back(std::move(step));
      break;
    }
    if (p.options().early_stop && best_score <= r.objective) {
      r.stop_reason = "no candidate increases the objective beyond " + std::to_string(r.objective) + "; stopped with " +
                      std::to_string(p.k() - it + 1) + " unused budget";
      step.note = r.stop_reason;
      r.trace.push_back(std::move(step));
      break;
    }
    used[*best] = true;
    r.chosen_states.push_back(p.candidates()[*best]);
    r.chosen.push_back(p.arena().state_id(p.candidates()[*best]));
    r.region = std::move(best_region);
    r.objective = best_score;
    step.chosen = r.chosen.back();
    step.value_after = r.objective;
    if (tied.size() > 1) step.note = "tie among {" + join(tied) + "} broken by candidate order";
    r.trace.push_back(std::move(step));
  }
  verify_post_hoc(p, r);
  return r;
}

AllocationResult greedy_set_cover(const AllocationProblem& p) {
  AllocationResult r{Method::setcover, {}, {}, {}, 0, std::size_t{0}, {}, {}, 0, false};
  const std::size_t n = p.candidates().size();
  StateSet covered(p.game().universe());
  r.region.members = StateSet(p.game().universe());
  r.region.levels.assign(p.game().universe(), -1);
  std::vector<bool> used(n, false);

  for (std::size_t it = 1; it <= p.k(); ++it) {
    TraceStep step{it, {}, {}, *r.cover_value, {}};
    std::optional<std::size_t> best;
    std::size_t best_gain = 0;
    std::vector<std::string> tied;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const std::size_t gain = p.objective(p.singleton(i).members - covered);
      const std::string id = p.arena().state_id(p.candidates()[i]);
      step.scores.push_back({id, gain});
      if (!best || gain > best_gain) {
        best = i;
        best_gain = gain;
        tied = {id};
      } else if (gain == best_gain) {
        tied.push_back(id);
      }
    }
    if (!best) {
      r.stop_reason = "candidates exhausted after " + std::to_string(it - 1) + " of " + std::to_string(p.k()) + " picks";
      step.note = r.stop_reason;
      r.trace.push_back(std::move(step));
      break;
    }
    if (p.options().early_stop && best_gain == 0) {
      r.stop_reason = "no candidate covers a new state; stopped with " + std::to_string(p.k() - it + 1) +
                      " unused budget";
      step.note = r.stop_reason;
      r.trace.push_back(std::move(step));
      break;
    }
    used[*best] = true;
    covered |= p.singleton(*best).members;
    r.chosen_states.push_back(p.candidates()[*best]);
    r.chosen.push_back(p.arena().state_id(p.candidates()[*best]));
    r.cover_value = p.objective(covered);
    step.chosen = r.chosen.back();
    step.value_after = *r.cover_value;
    if (tied.size() > 1) step.note = "tie among {" + join(tied) + "} broken by candidate order";
    r.trace.push_back(std::move(step));
  }
  // the reported region is the true deceptive region of the cover, not the union
  for (StateIndex s : r.chosen_states) {
    const auto it = std::find(p.candidates().begin(), p.candidates().end(), s);
    r.region = compose(p.graph(), r.region.members, p.singleton(it - p.candidates().begin()).members);
  }
  r.objective = p.objective(r.region.members);
  verify_post_hoc(p, r);
  return r;
}

AllocationResult exact_optimal(const AllocationProblem& p) {
  const std::size_t n = p.candidates().size();
  const std::uint64_t total = count_subsets(n, p.k(), p.options().subset_cap);
  if (total > p.options().subset_cap)
    throw ResourceCapExceeded("exact allocation needs more than " + std::to_string(p.options().subset_cap) +
                              " subset evaluations (raise --cap or lower k)");

  AllocationResult r{Method::exact, {}, {}, {}, 0, {}, {}, {}, 0, true};
  std::optional<std::vector<std::size_t>> best;
  std::vector<std::size_t> current;

  // subsets of candidate positions in lexicographic order of their sorted index sequence
  auto visit = [&](auto&& self, std::size_t from) -> void {
    std::vector<StateIndex> d;
    for (std::size_t i : current) d.push_back(p.candidates()[i]);
    Region reg = p.dswin_direct(d);
    const std::size_t value = p.objective(reg.members);
    ++r.evaluated_subsets;
    if (!best || value > r.objective) {
      best = current;
      r.objective = value;
      r.region = std::move(reg);
    }
    if (current.size() == p.k()) return;
    for (std::size_t i = from; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);

  for (std::size_t i : *best) r.chosen_states.push_back(p.candidates()[i]);
  r.chosen = p.ids(r.chosen_states);
  TraceStep step{1, {}, r.chosen.empty() ? std::nullopt : std::optional<std::string>(join(r.chosen)), r.objective,
                 std::to_string(r.evaluated_subsets) + " subsets evaluated; ties broken by lexicographic subset order"};
  r.trace.push_back(std::move(step));
  return r;
}

AllocationResult allocate(const AllocationProblem& problem, Method method) {
  switch (method) {
    case Method::greedymax: return greedy_max(problem);
    case Method::setcover: return greedy_set_cover(problem);
    case Method::exact: return exact_optimal(problem);
  }
  throw InternalError("unknown method");
}

Theorem1Report check_theorem1(const AllocationProblem& p) {
  const std::size_t n = p.candidates().size();
  if (n >= 63 || (std::uint64_t{1} << n) > p.options().subset_cap)
    throw ResourceCapExceeded("condition check needs 2^" + std::to_string(n) + " subsets, above the cap");
  const std::uint64_t subsets = std::uint64_t{1} << n;

  std::vector<StateSet> region(subsets);
  std::vector<std::size_t> f(subsets);
  for (std::uint64_t m = 0; m < subsets; ++m) {
    region[m] = p.dswin_for(chosen_from_mask(p, m)).members & p.count_mask();
    f[m] = region[m].size();
  }

  Theorem1Report rep;
  rep.subsets = subsets;
  auto names = [&](std::uint64_t m) { return p.ids(chosen_from_mask(p, m)); };
  auto state_names = [&](const StateSet& s) {
    std::vector<std::string> out;
    s.for_each([&](StateIndex v) { out.push_back(p.product().name(v)); });
    return out;
  };
  auto record = [](Theorem1Condition& c, Theorem1Witness w) {
    c.holds = false;
    ++c.violations;
    if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(std::move(w));
  };
  const auto& cid = p.candidate_ids();

  for (std::uint64_t d = 0; d < subsets; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (d & bit) continue;
      if (f[d] > f[d | bit])
        record(rep.monotone, {names(d), {cid[i]}, {},
                              "f(D) = " + std::to_string(f[d]) + " > f(D u {s}) = " + std::to_string(f[d | bit])});
      const StateSet uni = region[d] | region[bit];
      if (!(region[d | bit] == uni))
        record(rep.union_hypothesis,
               {names(d), {cid[i]}, state_names((region[d | bit] - uni) | (uni - region[d | bit])),
                "DSWin_{D u {s}} differs from DSWin_D u DSWin_{s}"});
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t bit2 = std::uint64_t{1} << j;
        if (d & bit2) continue;
        const StateSet inter = region[d | bit] & region[d | bit2];
        if (!(region[d] == inter))
          record(rep.intersection_hypothesis,
                 {names(d), {cid[i], cid[j]}, state_names((inter - region[d]) | (region[d] - inter)),
                  "DSWin_D differs from DSWin_{D u {s1}} n DSWin_{D u {s2}}"});
      }
    }
  }

  // diminishing (or increasing) returns over every D subset of D' and s outside D'
  auto returns_check = [&](bool diminishing) {
    Theorem1Condition c;
    for (std::uint64_t big = 0; big < subsets; ++big) {
      for (std::uint64_t small = big;; small = (small - 1) & big) {
        for (std::size_t i = 0; i < n; ++i) {
          const std::uint64_t bit = std::uint64_t{1} << i;
          if (big & bit) continue;
          const long gain_small = static_cast<long>(f[small | bit]) - static_cast<long>(f[small]);
          const long gain_big = static_cast<long>(f[big | bit]) - static_cast<long>(f[big]);
          if (diminishing ? gain_small < gain_big : gain_small > gain_big)
            record(c, {names(small), {cid[i]}, {},
                       "gain " + std::to_string(gain_small) + " at D vs " + std::to_string(gain_big) + " at D' = {" +
                           join(names(big)) + "}"});
        }
        if (small == 0) break;
      }
    }
    return c;
  };
  if (rep.union_hypothesis.holds) rep.submodular = returns_check(true);
  if (rep.intersection_hypothesis.holds) rep.supermodular = returns_check(false);
  return rep;
}

}  // namespace decoy
