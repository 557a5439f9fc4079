#include "decoy/logic/dfa.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace decoy::logic {

using nlohmann::json;

namespace {

Valuation decode(const std::vector<std::string>& alphabet, std::uint32_t mask) {
  Valuation v;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if ((mask >> i) & 1u) v.insert(alphabet[i]);
  return v;
}

std::string render(const Valuation& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : v) {
    if (!first) out += ", ";
    out += p;
    first = false;
  }
  return out + "}";
}

}  // namespace

Dfa Dfa::create(std::vector<std::string> states, DfaState initial, std::vector<DfaState> accepting,
                std::vector<DfaEdge> edges) {
  Dfa d;
  if (states.empty()) throw InputError("DFA has no states");
  std::unordered_map<std::string, DfaState> seen;
  for (const auto& id : states)
    if (!seen.emplace(id, static_cast<DfaState>(seen.size())).second)
      throw InputError("DFA: duplicate state '" + id + "'");
  d.state_ids_ = std::move(states);
  if (initial >= d.state_ids_.size()) throw InputError("DFA: initial state out of range");
  d.initial_ = initial;
  d.accepting_.assign(d.state_ids_.size(), false);
  for (DfaState q : accepting) {
    if (q >= d.state_ids_.size()) throw InputError("DFA: accepting state out of range");
    d.accepting_[q] = true;
  }
  for (const auto& e : edges)
    if (e.from >= d.state_ids_.size() || e.to >= d.state_ids_.size())
      throw InputError("DFA: edge endpoint out of range");
  d.edges_ = std::move(edges);
  d.validate_and_tabulate();
  return d;
}

Dfa Dfa::create(std::vector<std::string> states, const std::string& initial,
                const std::vector<std::string>& accepting, const std::vector<EdgeSpec>& edges) {
  std::unordered_map<std::string, DfaState> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<DfaState>(i));
  auto lookup = [&](const std::string& id, const char* what) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError(std::string("DFA: unknown ") + what + " state '" + id + "'");
    return it->second;
  };
  const DfaState init = lookup(initial, "initial");
  std::vector<DfaState> acc;
  for (const auto& a : accepting) acc.push_back(lookup(a, "accepting"));
  std::vector<DfaEdge> es;
  for (const auto& e : edges) {
    Guard g = [&] {
      try {
        return parse_guard(e.guard);
      } catch (const ParseError& err) {
        throw InputError("DFA edge " + e.from + " -> " + e.to + ": " + err.what());
      }
    }();
    std::set<std::string> props;
    g.collect_props(props);
    if (props.contains(std::string(kDecoyProp)))
      throw InputError("DFA edge " + e.from + " -> " + e.to + ": proposition 'decoy' is reserved");
    es.push_back({lookup(e.from, "edge source"), std::move(g), lookup(e.to, "edge target")});
  }
  return create(std::move(states), init, std::move(acc), std::move(es));
}

void Dfa::validate_and_tabulate() {
  std::set<std::string> props;
  for (const auto& e : edges_) e.guard.collect_props(props);
  alphabet_.assign(props.begin(), props.end());
  if (alphabet_.size() > kMaxAlphabet)
    throw InputError("DFA guard alphabet has " + std::to_string(alphabet_.size()) +
                     " propositions; at most " + std::to_string(kMaxAlphabet) + " supported");
  letters_ = std::size_t{1} << alphabet_.size();

  std::vector<std::vector<const DfaEdge*>> out(state_ids_.size());
  for (const auto& e : edges_) out[e.from].push_back(&e);

  table_.assign(state_ids_.size() * letters_, 0);
  for (DfaState q = 0; q < state_ids_.size(); ++q) {
    for (std::uint32_t mask = 0; mask < letters_; ++mask) {
      const Valuation sigma = decode(alphabet_, mask);
      const DfaEdge* hit = nullptr;
      for (const DfaEdge* e : out[q]) {
        if (!e->guard.eval(sigma)) continue;
        if (hit)
          throw DfaValidationError("DFA is nondeterministic at (" + state_ids_[q] + ", " +
                                       render(sigma) + "): edges to '" + state_ids_[hit->to] +
                                       "' and '" + state_ids_[e->to] + "' both fire",
                                   state_ids_[q], sigma);
        hit = e;
      }
      if (!hit)
        throw DfaValidationError("DFA is incomplete at (" + state_ids_[q] + ", " + render(sigma) +
                                     "): no edge fires",
                                 state_ids_[q], sigma);
      if (accepting_[q] && !accepting_[hit->to])
        throw DfaValidationError("accepting state '" + state_ids_[q] + "' is not absorbing under " +
                                     render(sigma),
                                 state_ids_[q], sigma);
      table_[q * letters_ + mask] = hit->to;
    }
  }
}

std::optional<DfaState> Dfa::find_state(std::string_view id) const {
  for (DfaState q = 0; q < state_ids_.size(); ++q)
    if (state_ids_[q] == id) return q;
  return std::nullopt;
}

std::vector<DfaState> Dfa::accepting_states() const {
  std::vector<DfaState> out;
  for (DfaState q = 0; q < accepting_.size(); ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

std::uint32_t Dfa::encode(const Valuation& sigma) const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (sigma.contains(alphabet_[i])) mask |= 1u << i;
  return mask;
}

DfaState Dfa::step(DfaState q, const Valuation& sigma) const {
  if (q >= state_ids_.size()) throw InputError("DFA: state index out of range");
  return step_mask(q, encode(sigma));
}

DfaState dfa_step(const Dfa& dfa, DfaState q, const Valuation& sigma) { return dfa.step(q, sigma); }

// ---------------------------------------------------------------------------

namespace {

std::string id_string(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError(std::string("DFA document: ") + what + " must be a string or integer");
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(std::string("DFA document: missing key '") + key + "'");
  return obj.at(key);
}

}  // namespace

Dfa load_dfa(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("DFA document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("DFA document: top level must be an object");
  std::vector<std::string> states;
  const json& js = require(doc, "states");
  if (!js.is_array()) throw InputError("DFA document: 'states' must be a list");
  for (const auto& s : js) states.push_back(id_string(s, "state id"));
  const std::string initial = id_string(require(doc, "initial"), "initial");
  std::vector<std::string> accepting;
  const json& ja = require(doc, "accepting");
  if (!ja.is_array()) throw InputError("DFA document: 'accepting' must be a list");
  for (const auto& s : ja) accepting.push_back(id_string(s, "accepting id"));
  std::vector<Dfa::EdgeSpec> edges;
  const json& je = require(doc, "edges");
  if (!je.is_array()) throw InputError("DFA document: 'edges' must be a list");
  for (const auto& e : je) {
    const json& g = require(e, "guard");
    if (!g.is_string()) throw InputError("DFA document: guard must be a string");
    edges.push_back({id_string(require(e, "from"), "from"), g.get<std::string>(),
                     id_string(require(e, "to"), "to")});
  }
  return Dfa::create(std::move(states), initial, accepting, edges);
}

Dfa load_dfa_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open DFA file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_dfa(ss.str());
}

std::string dump_dfa(const Dfa& dfa) {
  json doc;
  json states = json::array();
  for (DfaState q = 0; q < dfa.num_states(); ++q) states.push_back(dfa.state_id(q));
  doc["states"] = states;
  doc["initial"] = dfa.state_id(dfa.initial());
  json acc = json::array();
  for (DfaState q : dfa.accepting_states()) acc.push_back(dfa.state_id(q));
  doc["accepting"] = acc;
  json edges = json::array();
  for (const auto& e : dfa.edges())
    edges.push_back({{"from", dfa.state_id(e.from)}, {"guard", e.guard.to_string()}, {"to", dfa.state_id(e.to)}});
  doc["edges"] = edges;
  if (!dfa.annotations().empty()) {
    json notes = json::object();
    for (const auto& [q, text] : dfa.annotations()) notes[dfa.state_id(q)] = text;
    doc["annotations"] = notes;
  }
  return doc.dump(2) + "\n";
}

}  // namespace decoy::logic
