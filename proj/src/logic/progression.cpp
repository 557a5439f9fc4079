// scLTL -> DFA by formula progression over canonical DNF obligations.
//
// An obligation is a disjunction of clauses; a clause is a set of closure
// elements (atoms, negated atoms, X, U, F subformulas). Progressing an element
// over one letter yields another obligation over the same closure, so the
// reachable obligation space is finite.

#include <algorithm>
#include <map>
#include <queue>

#include "decoy/logic/dfa.hpp"

namespace decoy::logic {
namespace {

using Kind = ScltlFormula::Kind;
using Clause = std::vector<int>;
using Dnf = std::vector<Clause>;

const Dnf kTrue{Clause{}};
const Dnf kFalse{};

constexpr std::size_t kMaxDfaStates = 1u << 16;

class Progressor {
 public:
  explicit Progressor(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

  Dnf to_dnf(const ScltlFormula& f) {
    switch (f.kind()) {
      case Kind::True: return kTrue;
      case Kind::False: return kFalse;
      case Kind::And: {
        const auto a = f.args();
        return conj(to_dnf(a[0]), to_dnf(a[1]));
      }
      case Kind::Or: {
        const auto a = f.args();
        return disj(to_dnf(a[0]), to_dnf(a[1]));
      }
      default: return Dnf{Clause{intern(f)}};
    }
  }

  Dnf progress(const Dnf& d, std::uint32_t mask) {
    Dnf out = kFalse;
    for (const Clause& c : d) {
      Dnf acc = kTrue;
      for (int e : c) {
        acc = conj(acc, progress_element(e, mask));
        if (acc.empty()) break;
      }
      out = disj(out, acc);
      if (out == kTrue) break;
    }
    return out;
  }

  std::string render(const Dnf& d) const {
    if (d.empty()) return "false";
    if (d == kTrue) return "true";
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += " | ";
      const bool wrap = d.size() > 1 && d[i].size() > 1;
      if (wrap) out += "(";
      for (std::size_t j = 0; j < d[i].size(); ++j) {
        if (j) out += " & ";
        out += elements_[d[i][j]].to_string();
      }
      if (wrap) out += ")";
    }
    return out;
  }

 private:
  int intern(const ScltlFormula& f) {
    const std::string key = f.to_string();
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(elements_.size());
    elements_.push_back(f);
    ids_.emplace(key, id);
    return id;
  }

  int bit_of(const std::string& atom) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), atom);
    return static_cast<int>(it - alphabet_.begin());
  }

  Dnf progress_element(int id, std::uint32_t mask) {
    const ScltlFormula f = elements_[id];
    switch (f.kind()) {
      case Kind::Atom: return ((mask >> bit_of(f.name())) & 1u) ? kTrue : kFalse;
      case Kind::NegAtom: return ((mask >> bit_of(f.name())) & 1u) ? kFalse : kTrue;
      case Kind::Next: return to_dnf(f.args()[0]);
      case Kind::Eventually: return disj(progress(to_dnf(f.args()[0]), mask), Dnf{Clause{id}});
      case Kind::Until: {
        const auto a = f.args();
        Dnf hold = conj(progress(to_dnf(a[0]), mask), Dnf{Clause{id}});
        return disj(progress(to_dnf(a[1]), mask), std::move(hold));
      }
      default: break;
    }
    return kFalse;
  }

  bool contradictory(const Clause& c) const {
    for (int e : c) {
      if (elements_[e].kind() != Kind::Atom) continue;
      for (int o : c)
        if (elements_[o].kind() == Kind::NegAtom && elements_[o].name() == elements_[e].name())
          return true;
    }
    return false;
  }

  Dnf canonical(Dnf d) const {
    for (auto& c : d) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::erase_if(d, [&](const Clause& c) { return contradictory(c); });
    std::sort(d.begin(), d.end(), [](const Clause& a, const Clause& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    Dnf kept;
    for (const Clause& c : d) {
      const bool absorbed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
        return std::includes(c.begin(), c.end(), k.begin(), k.end());
      });
      if (!absorbed) kept.push_back(c);
    }
    return kept;
  }

  Dnf conj(const Dnf& a, const Dnf& b) const {
    Dnf out;
    for (const Clause& x : a)
      for (const Clause& y : b) {
        Clause c = x;
        c.insert(c.end(), y.begin(), y.end());
        out.push_back(std::move(c));
      }
    return canonical(std::move(out));
  }

  Dnf disj(const Dnf& a, const Dnf& b) const {
    Dnf out = a;
    out.insert(out.end(), b.begin(), b.end());
    return canonical(std::move(out));
  }

  std::vector<std::string> alphabet_;
  std::vector<ScltlFormula> elements_;
  std::map<std::string, int> ids_;
};

}  // namespace

Dfa to_dfa(const ScltlFormula& formula, const std::vector<std::string>& aps) {
  const std::set<std::string> atoms = formula.atoms();
  for (const auto& a : atoms) {
    if (a == kDecoyProp) throw InputError("proposition 'decoy' is reserved");
    if (std::find(aps.begin(), aps.end(), a) == aps.end())
      throw InputError("formula proposition '" + a + "' is not in the arena's aps");
  }
  if (atoms.size() > kMaxFormulaAtoms)
    throw ResourceCapExceeded("formula mentions " + std::to_string(atoms.size()) +
                              " propositions; at most " + std::to_string(kMaxFormulaAtoms) +
                              " supported");
  std::vector<std::string> alphabet(atoms.begin(), atoms.end());
  const std::uint32_t letters = 1u << alphabet.size();

  Progressor prog(alphabet);
  std::map<Dnf, DfaState> index;
  std::vector<Dnf> states;
  std::queue<DfaState> work;
  auto visit = [&](Dnf d) {
    auto [it, fresh] = index.emplace(d, static_cast<DfaState>(states.size()));
    if (fresh) {
      if (states.size() >= kMaxDfaStates)
        throw ResourceCapExceeded("formula progression exceeded " + std::to_string(kMaxDfaStates) +
                                  " DFA states");
      states.push_back(std::move(d));
      work.push(it->second);
    }
    return it->second;
  };

  visit(prog.to_dnf(formula));
  std::vector<std::vector<DfaState>> succ;
  while (!work.empty()) {
    const DfaState q = work.front();
    work.pop();
    if (succ.size() <= q) succ.resize(q + 1);
    std::vector<DfaState> row(letters);
    for (std::uint32_t mask = 0; mask < letters; ++mask) {
      const Dnf next = prog.progress(states[q], mask);
      row[mask] = visit(next);
    }
    succ[q] = std::move(row);
  }

  std::vector<std::string> ids;
  std::vector<DfaState> accepting;
  std::vector<DfaEdge> edges;
  for (DfaState q = 0; q < states.size(); ++q) {
    ids.push_back(std::to_string(q));
    if (states[q] == kTrue) accepting.push_back(q);
    std::vector<DfaState> targets(succ[q].begin(), succ[q].end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (DfaState t : targets) {
      std::vector<bool> table(letters);
      for (std::uint32_t m = 0; m < letters; ++m) table[m] = succ[q][m] == t;
      edges.push_back({q, guard_from_truth_table(alphabet, table), t});
    }
  }
  Dfa dfa = Dfa::create(std::move(ids), 0, std::move(accepting), std::move(edges));
  for (DfaState q = 0; q < states.size(); ++q) dfa.set_annotation(q, prog.render(states[q]));
  return dfa;
}

}  // namespace decoy::logic
