#include "decoy/arena.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "decoy/error.hpp"
#include "json.hpp"

namespace decoy {

using nlohmann::json;

std::optional<StateIndex> Arena::find_state(std::string_view id) const {
  auto it = state_lookup_.find(std::string(id));
  if (it == state_lookup_.end()) return std::nullopt;
  return it->second;
}

StateIndex Arena::state_index(std::string_view id) const {
  if (auto s = find_state(id)) return *s;
  throw InputError("unknown state '" + std::string(id) + "'");
}

std::optional<ActionIndex> Arena::find_action(std::string_view id) const {
  auto it = action_lookup_.find(std::string(id));
  if (it == action_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<StateIndex> Arena::successor(StateIndex s, ActionIndex a) const {
  for (const Move& m : moves(s))
    if (m.action == a) return m.to;
  return std::nullopt;
}

bool Arena::has_ap(std::string_view p) const {
  return std::find(aps_.begin(), aps_.end(), p) != aps_.end();
}

// ---------------------------------------------------------------------------

ArenaBuilder& ArenaBuilder::add_ap(std::string name) {
  aps_.push_back(std::move(name));
  return *this;
}

ArenaBuilder& ArenaBuilder::add_state(std::string id, Player owner,
                                      std::vector<std::string> labels) {
  states_.push_back({std::move(id), owner, std::move(labels)});
  return *this;
}

ArenaBuilder& ArenaBuilder::add_action(std::string id, Player owner) {
  actions_.emplace_back(std::move(id), owner);
  return *this;
}

ArenaBuilder& ArenaBuilder::add_transition(std::string from, std::string action, std::string to) {
  transitions_.push_back({std::move(from), std::move(action), std::move(to)});
  return *this;
}

ArenaBuilder& ArenaBuilder::set_initial(std::vector<std::string> ids) {
  initial_ = std::move(ids);
  return *this;
}

Arena ArenaBuilder::build() const {
  Arena a;
  if (states_.empty()) throw InputError("arena has no states");

  for (const auto& p : aps_) {
    if (p.empty()) throw InputError("empty proposition name");
    if (a.has_ap(p)) throw InputError("duplicate proposition '" + p + "'");
    a.aps_.push_back(p);
  }

  for (const auto& st : states_) {
    if (st.id.empty()) throw InputError("empty state id");
    if (!a.state_lookup_.emplace(st.id, static_cast<StateIndex>(a.state_ids_.size())).second)
      throw InputError("duplicate state '" + st.id + "'");
    Valuation labels;
    for (const auto& l : st.labels) {
      if (!a.has_ap(l))
        throw InputError("state '" + st.id + "' has label '" + l + "' which is not in aps");
      labels.insert(l);
    }
    a.state_ids_.push_back(st.id);
    a.owners_.push_back(st.owner);
    a.labels_.push_back(std::move(labels));
  }

  for (const auto& [id, owner] : actions_) {
    if (id.empty()) throw InputError("empty action id");
    if (!a.action_lookup_.emplace(id, static_cast<ActionIndex>(a.action_ids_.size())).second)
      throw InputError("duplicate action '" + id + "'");
    a.action_ids_.push_back(id);
    a.action_owners_.push_back(owner);
  }

  std::vector<std::vector<Move>> per_state(a.state_ids_.size());
  for (const auto& t : transitions_) {
    const auto from = a.find_state(t.from);
    if (!from) throw InputError("transition references unknown state '" + t.from + "'");
    const auto to = a.find_state(t.to);
    if (!to) throw InputError("transition references unknown state '" + t.to + "'");
    const auto act = a.find_action(t.action);
    if (!act) throw InputError("transition references unknown action '" + t.action + "'");
    if (a.action_owners_[*act] != a.owners_[*from])
      throw InputError("owner mismatch: action '" + t.action + "' used at state '" + t.from +
                       "' owned by the other player");
    auto& bucket = per_state[*from];
    if (std::any_of(bucket.begin(), bucket.end(), [&](const Move& m) { return m.action == *act; }))
      throw InputError("duplicate transition for (" + t.from + ", " + t.action + ")");
    bucket.push_back({*act, *to});
  }

  a.offsets_.reserve(per_state.size() + 1);
  a.offsets_.push_back(0);
  for (std::size_t s = 0; s < per_state.size(); ++s) {
    auto& bucket = per_state[s];
    if (bucket.empty()) throw InputError("dead-end state '" + a.state_ids_[s] + "'");
    std::sort(bucket.begin(), bucket.end(),
              [](const Move& x, const Move& y) { return x.action < y.action; });
    a.moves_.insert(a.moves_.end(), bucket.begin(), bucket.end());
    a.offsets_.push_back(static_cast<std::uint32_t>(a.moves_.size()));
  }

  if (initial_) {
    a.explicit_initial_ = true;
    for (const auto& id : *initial_) {
      const auto s = a.find_state(id);
      if (!s) throw InputError("initial list references unknown state '" + id + "'");
      if (std::find(a.initial_.begin(), a.initial_.end(), *s) == a.initial_.end())
        a.initial_.push_back(*s);
    }
  } else {
    for (StateIndex s = 0; s < a.state_ids_.size(); ++s) a.initial_.push_back(s);
  }
  return a;
}

// ---------------------------------------------------------------------------

namespace {

Player parse_owner(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": owner must be 1 or 2");
  const int v = j.get<int>();
  if (v == 1) return Player::P1;
  if (v == 2) return Player::P2;
  throw InputError(where + ": owner must be 1 or 2");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& require_array(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array()) throw InputError(where + ": '" + key + "' must be a list");
  return v;
}

}  // namespace

Arena load_arena(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("arena document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("arena document: top level must be an object");

  ArenaBuilder b;
  for (const auto& p : require_array(doc, "aps", "arena")) {
    if (!p.is_string()) throw InputError("arena: aps entries must be strings");
    b.add_ap(p.get<std::string>());
  }
  for (const auto& st : require_array(doc, "states", "arena")) {
    const std::string id = require_string(st, "id", "arena state");
    const Player owner = parse_owner(require(st, "owner", "state '" + id + "'"), "state '" + id + "'");
    std::vector<std::string> labels;
    if (st.contains("labels")) {
      if (!st["labels"].is_array()) throw InputError("state '" + id + "': labels must be a list");
      for (const auto& l : st["labels"]) {
        if (!l.is_string()) throw InputError("state '" + id + "': labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    }
    b.add_state(id, owner, std::move(labels));
  }
  for (const auto& act : require_array(doc, "actions", "arena")) {
    const std::string id = require_string(act, "id", "arena action");
    b.add_action(id, parse_owner(require(act, "owner", "action '" + id + "'"), "action '" + id + "'"));
  }
  for (const auto& t : require_array(doc, "transitions", "arena")) {
    b.add_transition(require_string(t, "from", "transition"), require_string(t, "action", "transition"),
                     require_string(t, "to", "transition"));
  }
  if (doc.contains("initial")) {
    std::vector<std::string> init;
    for (const auto& s : require_array(doc, "initial", "arena")) {
      if (!s.is_string()) throw InputError("arena: initial entries must be strings");
      init.push_back(s.get<std::string>());
    }
    b.set_initial(std::move(init));
  }
  return b.build();
}

Arena load_arena_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open arena file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_arena(ss.str());
}

std::string dump_arena(const Arena& arena) {
  json doc;
  doc["aps"] = arena.aps();
  json states = json::array();
  for (StateIndex s = 0; s < arena.num_states(); ++s) {
    const auto& l = arena.labels(s);
    // Labels are written in aps order so reloading reproduces the same arena.
    json labels = json::array();
    for (const auto& p : arena.aps())
      if (l.contains(p)) labels.push_back(p);
    states.push_back({{"id", arena.state_id(s)},
                      {"owner", static_cast<int>(arena.owner(s))},
                      {"labels", labels}});
  }
  doc["states"] = states;
  json actions = json::array();
  for (ActionIndex a = 0; a < arena.num_actions(); ++a)
    actions.push_back({{"id", arena.action_id(a)}, {"owner", static_cast<int>(arena.action_owner(a))}});
  doc["actions"] = actions;
  json transitions = json::array();
  for (StateIndex s = 0; s < arena.num_states(); ++s)
    for (const Move& m : arena.moves(s))
      transitions.push_back({{"from", arena.state_id(s)},
                             {"action", arena.action_id(m.action)},
                             {"to", arena.state_id(m.to)}});
  doc["transitions"] = transitions;
  if (arena.has_explicit_initial()) {
    json init = json::array();
    for (StateIndex s : arena.initial_states()) init.push_back(arena.state_id(s));
    doc["initial"] = init;
  }
  return doc.dump(2) + "\n";
}

Valuation perceived_label(const Arena& arena, StateIndex s) {
  if (s >= arena.num_states()) throw InputError("unknown state index " + std::to_string(s));
  Valuation out = arena.labels(s);
  out.erase(std::string(kDecoyProp));
  return out;
}

Valuation perceived_label(const Arena& arena, std::string_view state_id) {
  return perceived_label(arena, arena.state_index(state_id));
}

Arena with_decoys(const Arena& arena, std::span<const StateIndex> decoys) {
  Arena out = arena;
  for (StateIndex s : decoys) {
    if (s >= out.num_states()) throw InputError("unknown state index " + std::to_string(s));
  }
  if (decoys.empty()) return out;
  if (!out.has_ap(kDecoyProp)) out.aps_.emplace_back(kDecoyProp);
  for (StateIndex s : decoys) out.labels_[s].insert(std::string(kDecoyProp));
  return out;
}

Arena with_decoys(const Arena& arena, std::span<const std::string> decoys) {
  std::vector<StateIndex> idx;
  idx.reserve(decoys.size());
  for (const auto& id : decoys) idx.push_back(arena.state_index(id));
  return with_decoys(arena, std::span<const StateIndex>(idx));
}

std::vector<StateIndex> decoy_states(const Arena& arena) {
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < arena.num_states(); ++s)
    if (arena.labels(s).contains(kDecoyProp)) out.push_back(s);
  return out;
}

}  // namespace decoy
