#include "decoy/dot.hpp"

#include <sstream>

namespace decoy {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

const char* shape(Player p) { return p == Player::P2 ? "box" : "ellipse"; }

std::string label_text(const Valuation& v) {
  std::string s;
  for (const auto& p : v) s += (s.empty() ? "" : ",") + p;
  return s;
}

}  // namespace

std::string arena_dot(const Arena& a) {
  std::ostringstream os;
  os << "digraph arena {\n  rankdir=LR;\n";
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    os << "  " << quote(a.state_id(s)) << " [shape=" << shape(a.owner(s));
    const bool decoy = a.labels(s).count(kDecoyProp) > 0;
    if (decoy) os << ", style=filled, fillcolor=red";
    os << ", xlabel=" << quote(label_text(a.labels(s))) << "];\n";
  }
  for (StateIndex s = 0; s < a.num_states(); ++s)
    for (const Move& m : a.moves(s))
      os << "  " << quote(a.state_id(s)) << " -> " << quote(a.state_id(m.to)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string dfa_dot(const logic::Dfa& d) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (logic::DfaState q = 0; q < d.num_states(); ++q)
    os << "  " << quote(d.state_id(q)) << " [shape=" << (d.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
  os << "  init -> " << quote(d.state_id(d.initial())) << ";\n";
  for (const auto& e : d.edges())
    os << "  " << quote(d.state_id(e.from)) << " -> " << quote(d.state_id(e.to))
       << " [label=" << quote(e.guard.to_string()) << "];\n";
  os << "}\n";
  return os.str();
}

std::string product_dot(const ProductGame& g, const ProductDotOptions& o) {
  std::ostringstream os;
  os << "digraph " << quote(o.name) << " {\n  rankdir=LR;\n";
  auto drawn = [&](StateIndex v) { return !o.only || o.only->contains(v); };
  for (StateIndex v = 0; v < g.num_states(); ++v) {
    if (!drawn(v)) continue;
    os << "  " << quote(g.name(v)) << " [shape=" << shape(g.owner(v));
    if (g.f2().contains(v)) os << ", peripheries=2";
    if (g.fd().contains(v)) os << ", style=filled, fillcolor=red";
    else if (o.dswin && o.dswin->contains(v)) os << ", style=filled, fillcolor=lightblue";
    os << "];\n";
  }
  for (StateIndex v = 0; v < g.num_states(); ++v) {
    if (!drawn(v)) continue;
    const auto chosen = o.strategy ? o.strategy->choice.find(v) : std::map<StateIndex, ActionIndex>::const_iterator{};
    for (const Move& m : g.moves(v)) {
      if (!drawn(m.to)) continue;
      os << "  " << quote(g.name(v)) << " -> " << quote(g.name(m.to));
      if (o.strategy && chosen != o.strategy->choice.end() && chosen->second == m.action) os << " [penwidth=2.5]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace decoy
