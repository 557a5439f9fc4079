// One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "decoy/allocate.hpp"
#include "decoy/generate.hpp"
#include "decoy/logic/scltl.hpp"
#include "decoy/product.hpp"
#include "decoy/solver.hpp"

using namespace decoy;
using Names = std::set<std::string>;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double kWinRegionSeconds = 1.0;
constexpr double kAllocationSeconds = 5.0;
constexpr double kBatchSeconds = 60.0;
constexpr double kDfaSeconds = 10.0;
constexpr double kScaleSeconds = 10.0;
constexpr double kScaleRatio = 2.5;
constexpr std::size_t kBatchInstances = 120;
constexpr std::size_t kDfaWordLength = 6;
constexpr std::size_t kScaleProductStates = 2000;
constexpr double kScaleMinSampleSeconds = 0.1;
constexpr std::uint64_t kScaleSeeds = 5;

const std::string kData = DECOY_DATA_DIR;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string join(const Names& xs) {
  std::string s = "{";
  for (const auto& x : xs) s += (s.size() > 1 ? ", " : "") + x;
  return s + "}";
}

Names names(const ProductGame& g, const StateSet& s) {
  Names out;
  s.for_each([&](StateIndex v) { out.insert(g.name(v)); });
  return out;
}

const Arena& fig1() {
  static const Arena a = load_arena_file(kData + "/fig1-arena.json");
  return a;
}
const logic::Dfa& fig2a() {
  static const logic::Dfa d = logic::load_dfa_file(kData + "/fig2a-dfa.json");
  return d;
}

Names fig1_dswin(const std::vector<std::string>& d) {
  const ProductGame pg = build_hypergame(fig1(), fig2a(), std::span<const std::string>(d));
  const PerceptualRegions pr = attacker_perceptual_regions(pg);
  return names(pg, dswin(build_deceptive_game(pg, pr.win2_2.members)).members & visible_states(pg));
}

// Every play from v under the reacher's strategy reaches target within
// `budget` steps and never touches a sink, whatever the avoider does.
bool all_plays_reach(const GameGraph& g, const StateSet& target, const StateSet& sinks, const Strategy& s,
                     StateIndex v, std::size_t budget, std::map<std::pair<StateIndex, std::size_t>, bool>& memo) {
  if (target.contains(v)) return true;
  if (sinks.contains(v) || budget == 0) return false;
  const auto key = std::make_pair(v, budget);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool ok;
  if (g.reacher_owns(v)) {
    const auto c = s.choice.find(v);
    ok = false;
    if (c != s.choice.end())
      for (const Move& m : g.moves(v))
        if (m.action == c->second) ok = all_plays_reach(g, target, sinks, s, m.to, budget - 1, memo);
  } else {
    ok = !g.moves(v).empty();
    for (const Move& m : g.moves(v)) ok = ok && all_plays_reach(g, target, sinks, s, m.to, budget - 1, memo);
  }
  return memo[key] = ok;
}

// Returns the number of DSWin states whose plays were checked; appends a
// description of each failure.
std::size_t strategy_check(const AllocationProblem& p, const std::vector<StateIndex>& d, std::vector<std::string>& bad) {
  const StateSet target = p.targets_for(d);
  const WinRegions w = sure_win(p.graph(), target);
  const Strategy s = extract_strategy(p.graph(), target, w).reacher;
  std::map<std::pair<StateIndex, std::size_t>, bool> memo;
  const std::size_t budget = p.game().states().size();
  std::size_t n = 0;
  w.reacher.members.for_each([&](StateIndex v) {
    ++n;
    if (!all_plays_reach(p.graph(), target, p.game().sinks(), s, v, budget, memo))
      bad.push_back(p.product().name(v));
  });
  return n;
}

std::vector<std::vector<StateIndex>> all_subsets(const std::vector<StateIndex>& c) {
  std::vector<std::vector<StateIndex>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.size()); ++m) {
    std::vector<StateIndex> d;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (m >> i & 1u) d.push_back(c[i]);
    out.push_back(std::move(d));
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  const ProductGame pg = build_hypergame(fig1(), fig2a());
  const PerceptualRegions pr = attacker_perceptual_regions(pg);
  const StateSet vis = visible_states(pg);
  const double secs = seconds_since(t0);
  const Names excluded = names(pg, vis - pr.win2_2.members);
  const bool ok = excluded == Names{"(a, 0)", "(b, 0)"} && secs < kWinRegionSeconds;
  return {ok, "visible states outside Win_2^2 = " + join(excluded) + " among " + std::to_string(vis.size()) +
                  " visible; " + fmt(secs) + " s"};
}

Outcome criterion2() {
  const std::map<std::string, Names> expected{
      {"j", {"(j, 1)", "(f, 1)"}},
      {"k", {"(k, 1)", "(k, 2)", "(f, 1)", "(g, 2)"}},
      {"l", {"(l, 0)", "(h, 0)"}},
      {"m", {"(m, 0)", "(i, 0)", "(e, 0)"}}};
  std::string detail;
  bool ok = true;
  for (const auto& [s, want] : expected) {
    const Names got = fig1_dswin({s});
    ok &= got == want;
    detail += (detail.empty() ? "" : "; ") + s + " -> " + join(got);
  }
  return {ok, detail};
}

Outcome criterion3() {
  const Names hk = fig1_dswin({"h", "k"});
  Names uni = fig1_dswin({"h"});
  for (const auto& x : fig1_dswin({"k"})) uni.insert(x);
  Names gained;
  std::set_difference(hk.begin(), hk.end(), uni.begin(), uni.end(), std::inserter(gained, gained.end()));
  const bool ok = hk.size() == 7 && gained == Names{"(c, 0)", "(d, 0)"};
  return {ok, "|DSWin_{h,k}| = " + std::to_string(hk.size()) + ", beyond the union: " + join(gained)};
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  const AllocationProblem p(fig1(), fig2a(), {"j", "k", "l", "m"}, 2);
  const AllocationResult sc = greedy_set_cover(p);
  const AllocationResult gm = greedy_max(p);
  const AllocationResult ex = exact_optimal(p);
  const double secs = seconds_since(t0);
  using V = std::vector<std::string>;
  const bool ok = sc.chosen == V{"k", "m"} && sc.objective == 7 && gm.chosen == V{"k", "l"} && gm.objective == 8 &&
                  ex.objective == 8 && secs < kAllocationSeconds;
  auto show = [](const AllocationResult& r) {
    Names s(r.chosen.begin(), r.chosen.end());
    return join(s) + "=" + std::to_string(r.objective);
  };
  return {ok, "setcover " + show(sc) + ", greedymax " + show(gm) + ", exact " + show(ex) + "; " + fmt(secs) + " s"};
}

struct Batch {
  std::vector<Instance> instances;
  std::vector<AllocationProblem> problems;
};

const Batch& batch() {
  static const Batch b = [] {
    Batch out;
    InstanceParams ip;
    ip.min_states = 4;
    ip.max_states = 12;
    ip.max_dfa_states = 4;
    ip.candidates = 4;
    ip.k = 4;  // longest greedy prefixes the candidate count allows
    for (std::uint64_t seed = 1; seed <= kBatchInstances; ++seed) {
      out.instances.push_back(random_instance(ip, seed));
      const Instance& in = out.instances.back();
      out.problems.emplace_back(in.arena, in.dfa, in.candidates, in.k);
    }
    return out;
  }();
  return b;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  const Batch& b = batch();
  std::size_t pairs = 0, prefixes = 0, gains = 0, mismatches = 0;
  std::string first;
  for (std::size_t n = 0; n < b.problems.size(); ++n) {
    const AllocationProblem& p = b.problems[n];
    const auto& c = p.candidates();
    auto check = [&](const StateSet& composed, const std::vector<StateIndex>& d) {
      if (!(composed == p.dswin_direct(d).members)) {
        ++mismatches;
        if (first.empty()) first = "seed " + std::to_string(n + 1);
      }
    };
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const Region r = compose(p.graph(), p.singleton(i).members, p.singleton(j).members);
        if (!(r.members == (p.singleton(i).members | p.singleton(j).members))) ++gains;
        check(r.members, {c[i], c[j]});
        ++pairs;
      }
    const AllocationResult g = greedy_max(p);
    StateSet acc(p.game().universe());
    std::vector<StateIndex> prefix;
    for (StateIndex s : g.chosen_states) {
      const std::size_t i = std::find(c.begin(), c.end(), s) - c.begin();
      acc = compose(p.graph(), acc, p.singleton(i).members).members;
      prefix.push_back(s);
      check(acc, prefix);
      ++prefixes;
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = mismatches == 0 && b.problems.size() >= 100 && secs < kBatchSeconds;
  return {ok, std::to_string(b.problems.size()) + " games, " + std::to_string(pairs) + " pairs (" +
                  std::to_string(gains) + " with composition gain), " + std::to_string(prefixes) +
                  " greedy prefixes, " + std::to_string(mismatches) + " mismatches" +
                  (first.empty() ? "" : " first at " + first) + "; " + fmt(secs) + " s"};
}

Outcome criterion6() {
  std::size_t checked = 0, containment = 0, bound = 0, monotone = 0;
  for (const AllocationProblem& p : batch().problems) {
    const auto& c = p.candidates();
    const auto subsets = all_subsets(c);
    std::vector<StateSet> reg;
    for (const auto& d : subsets) reg.push_back(p.dswin_for(d).members);
    for (std::uint64_t m = 0; m < subsets.size(); ++m) {
      StateSet cup(p.game().universe());
      for (std::size_t i = 0; i < c.size(); ++i)
        if (m >> i & 1u) cup |= reg[std::uint64_t{1} << i];
      if (p.objective(cup) > p.objective(reg[m])) ++bound;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (m & bit) continue;
        ++checked;
        if (!(reg[m] | reg[bit]).is_subset_of(reg[m | bit])) ++containment;
        if (p.objective(reg[m]) > p.objective(reg[m | bit])) ++monotone;
      }
    }
  }
  const bool ok = checked > 0 && containment == 0 && bound == 0 && monotone == 0;
  return {ok, std::to_string(checked) + " (D, s) pairs; violations: containment " + std::to_string(containment) +
                  ", union bound " + std::to_string(bound) + ", monotonicity " + std::to_string(monotone)};
}

Outcome criterion7() {
  std::vector<std::string> bad;
  std::size_t states = 0, sets = 0;
  const AllocationProblem fig(fig1(), fig2a(), {"h", "j", "k", "l", "m"}, 2);
  for (const auto& d : all_subsets(fig.candidates())) {
    states += strategy_check(fig, d, bad);
    ++sets;
  }
  const std::size_t fig_states = states;
  for (const AllocationProblem& p : batch().problems)
    for (const auto& d : all_subsets(p.candidates())) {
      states += strategy_check(p, d, bad);
      ++sets;
    }
  return {bad.empty() && fig_states > 0,
          std::to_string(states) + " start states over " + std::to_string(sets) + " decoy sets (" +
              std::to_string(fig_states) + " on the running example), " + std::to_string(bad.size()) + " unsound" +
              (bad.empty() ? "" : ", first " + bad.front())};
}

struct Equivalence {
  std::uint64_t words = 0;
  std::uint64_t mismatches = 0;
  std::vector<Valuation> shortest;
  bool found = false;
};

// Walks both automata over every word of length <= max_len using the given letters.
Equivalence compare_languages(const logic::Dfa& a, const logic::Dfa& b, const std::vector<Valuation>& letters,
                              std::size_t max_len) {
  Equivalence e;
  std::vector<std::uint32_t> la, lb;
  for (const auto& l : letters) {
    la.push_back(a.encode(l));
    lb.push_back(b.encode(l));
  }
  std::vector<std::size_t> word;
  std::function<void(logic::DfaState, logic::DfaState)> walk = [&](logic::DfaState qa, logic::DfaState qb) {
    ++e.words;
    if (a.is_accepting(qa) != b.is_accepting(qb)) {
      ++e.mismatches;
      if (!e.found || word.size() < e.shortest.size()) {
        e.found = true;
        e.shortest.clear();
        for (auto i : word) e.shortest.push_back(letters[i]);
      }
    }
    if (word.size() == max_len) return;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      word.push_back(i);
      walk(a.step_mask(qa, la[i]), b.step_mask(qb, lb[i]));
      word.pop_back();
    }
  };
  walk(a.initial(), b.initial());
  return e;
}

std::string show_word(const std::vector<Valuation>& w) {
  std::string s;
  for (const auto& l : w) {
    std::string x = "{";
    for (const auto& p : l) x += (x.size() > 1 ? "," : "") + p;
    s += (s.empty() ? "" : " ") + x + "}";
  }
  return s.empty() ? "(empty word)" : s;
}

std::vector<Valuation> letters_over(const std::vector<std::string>& props, bool singletons) {
  std::vector<Valuation> out;
  for (std::uint32_t m = 0; m < (1u << props.size()); ++m) {
    if (singletons && __builtin_popcount(m) > 1) continue;
    Valuation v;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (m >> i & 1u) v.insert(props[i]);
    out.push_back(v);
  }
  return out;
}

Outcome criterion8() {
  const auto t0 = Clock::now();
  const std::vector<std::string> props{"f", "g", "n", "o"};
  const std::string phi2 = "F(n | o) & (f -> F n) & (g -> F o)";
  const logic::Dfa d = logic::to_dfa(logic::parse_scltl(phi2), fig1().aps());
  const Equivalence e = compare_languages(d, fig2a(), letters_over(props, false), kDfaWordLength);
  const double secs = seconds_since(t0);

  const Equivalence single = compare_languages(d, fig2a(), letters_over(props, true), kDfaWordLength);
  const std::string intent = "(!f & !g) U (n | o | (f & F n) | (g & F o))";
  const Equivalence alt = compare_languages(logic::to_dfa(logic::parse_scltl(intent), fig1().aps()), fig2a(),
                                            letters_over(props, false), kDfaWordLength);
  const Equivalence alt_single = compare_languages(logic::to_dfa(logic::parse_scltl(intent), fig1().aps()), fig2a(),
                                                   letters_over(props, true), kDfaWordLength);
  std::printf("  note: to_dfa(%s) has %zu states; %llu of %llu words disagree with the bundled automaton, "
              "shortest %s\n",
              phi2.c_str(), d.num_states(), static_cast<unsigned long long>(e.mismatches),
              static_cast<unsigned long long>(e.words), show_word(e.shortest).c_str());
  std::printf("  note: with at most one proposition per letter: %llu of %llu disagree, shortest %s\n",
              static_cast<unsigned long long>(single.mismatches), static_cast<unsigned long long>(single.words),
              show_word(single.shortest).c_str());
  std::printf("  note: %s disagrees on %llu of %llu words, %llu of %llu with one proposition per letter\n",
              intent.c_str(), static_cast<unsigned long long>(alt.mismatches),
              static_cast<unsigned long long>(alt.words), static_cast<unsigned long long>(alt_single.mismatches),
              static_cast<unsigned long long>(alt_single.words));
  const bool ok = e.mismatches == 0 && secs < kDfaSeconds;
  return {ok, std::to_string(e.words) + " words up to length " + std::to_string(kDfaWordLength) + ", " +
                  std::to_string(e.mismatches) + " disagreements" +
                  (e.found ? ", e.g. " + show_word(e.shortest) : "") + "; " + fmt(secs) + " s"};
}

// Fastest observed time of one problem build plus GreedyMax, repeating until
// the samples add up to a minimum duration.
double greedy_seconds(const Instance& inst) {
  double best = 1e9, total = 0;
  int runs = 0;
  while (runs < 5 || total < kScaleMinSampleSeconds) {
    const auto t0 = Clock::now();
    const AllocationProblem p(inst.arena, inst.dfa, inst.candidates, inst.k);
    const AllocationResult r = greedy_max(p);
    const double s = seconds_since(t0);
    if (!r.verified) return 1e9;
    best = std::min(best, s);
    total += s;
    ++runs;
  }
  return best;
}

// Instances differ in how much of the graph the attacker wins, so timings are
// summed over several seeds per size.
Outcome criterion9() {
  double ts = 0, tl = 0, slowest = 0;
  std::size_t n_small = 0, n_large = 0;
  bool shape = true;
  for (std::uint64_t seed = 1; seed <= kScaleSeeds; ++seed) {
    const Instance small = scalability_instance(kScaleProductStates, seed);
    const Instance large = scalability_instance(2 * kScaleProductStates, seed);
    n_small = small.arena.num_states() * small.dfa.num_states();
    n_large = large.arena.num_states() * large.dfa.num_states();
    shape &= n_small == kScaleProductStates && small.candidates.size() == 20 && small.k == 5;
    const double a = greedy_seconds(small);
    ts += a;
    tl += greedy_seconds(large);
    slowest = std::max(slowest, a);
  }
  const double ratio = tl / ts;
  const bool ok = shape && slowest < kScaleSeconds && ratio <= kScaleRatio;
  return {ok, std::to_string(kScaleSeeds) + " seeds; N=" + std::to_string(n_small) + ": slowest " + fmt(slowest) +
                  " s, total " + fmt(ts) + " s; N=" + std::to_string(n_large) + ": total " + fmt(tl) +
                  " s; ratio " + fmt(ratio) + " (limit " + fmt(kScaleRatio) + ")"};
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  report(1, "attacker's winning region on the running example", guarded(criterion1));
  report(2, "singleton deceptive regions", guarded(criterion2));
  report(3, "composition gain for {h, k}", guarded(criterion3));
  report(4, "allocation outcomes at k = 2", guarded(criterion4));
  report(5, "composition equals direct solve on random games", guarded(criterion5));
  report(6, "containment, union bound and monotonicity", guarded(criterion6));
  report(7, "deceptive strategy soundness", guarded(criterion7));
  report(8, "formula translation matches the hand-drawn automaton", guarded(criterion8));
  report(9, "GreedyMax scaling", guarded(criterion9));
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
