#include "decoy/report.hpp"

namespace decoy::report {

Json state_list(const ProductGame& g, const StateSet& states) {
  Json out = Json::array();
  states.for_each([&](StateIndex v) { out.push_back(g.name(v)); });
  return out;
}

Json region(const ProductGame& g, const Region& r, const StateSet* mask) {
  const StateSet shown = mask ? r.members & *mask : r.members;
  Json states = Json::array();
  shown.for_each([&](StateIndex v) {
    Json e;
    e["state"] = g.name(v);
    if (r.level(v) >= 0) e["level"] = r.level(v);
    states.push_back(std::move(e));
  });
  Json out;
  out["size"] = shown.size();
  if (mask) out["outside_counting_domain"] = r.members.count_not_in(*mask);
  out["states"] = std::move(states);
  return out;
}

Json strategy(const ProductGame& g, const Strategy& s, const StateSet* mask) {
  Json out;
  out["role"] = s.role == Strategy::Role::reacher ? "reacher" : "avoider";
  Json choice = Json::array();
  for (const auto& [v, a] : s.choice) {
    if (mask && !mask->contains(v)) continue;
    const auto to = g.successor(v, a);
    Json e;
    e["state"] = g.name(v);
    e["action"] = g.arena().action_id(a);
    if (to) e["to"] = g.name(*to);
    choice.push_back(std::move(e));
  }
  out["choice"] = std::move(choice);
  return out;
}

Json allocation(const AllocationProblem& p, const AllocationResult& r) {
  Json out;
  out["method"] = method_name(r.method);
  out["counting"] = counting_name(p.options().counting);
  out["k"] = p.k();
  out["candidates"] = p.candidate_ids();
  out["chosen"] = r.chosen;
  out["objective"] = r.objective;
  if (r.cover_value) out["cover_value"] = *r.cover_value;
  if (r.method == Method::exact) out["evaluated_subsets"] = r.evaluated_subsets;
  out["verified"] = r.verified;
  out["stop_reason"] = r.stop_reason;
  const StateSet* mask = p.options().counting == Counting::trimmed ? &p.count_mask() : nullptr;
  out["region"] = region(p.product(), r.region, mask);
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    Json e;
    e["iteration"] = t.iteration;
    Json scores = Json::array();
    for (const auto& s : t.scores) scores.push_back(Json::array({s.candidate, s.score}));
    e["scores"] = std::move(scores);
    e["chosen"] = t.chosen ? Json(*t.chosen) : Json(nullptr);
    e["value_after"] = t.value_after;
    if (!t.note.empty()) e["note"] = t.note;
    trace.push_back(std::move(e));
  }
  out["trace"] = std::move(trace);
  return out;
}

namespace {

Json condition(const Theorem1Condition& c) {
  Json out;
  out["holds"] = c.holds;
  out["violations"] = c.violations;
  Json ws = Json::array();
  for (const auto& w : c.witnesses) {
    Json e;
    e["D"] = w.base;
    e["added"] = w.added;
    if (!w.states.empty()) e["states"] = w.states;
    e["detail"] = w.detail;
    ws.push_back(std::move(e));
  }
  out["witnesses"] = std::move(ws);
  return out;
}

}  // namespace

Json theorem1(const Theorem1Report& r) {
  Json out;
  out["subsets"] = r.subsets;
  out["monotone"] = condition(r.monotone);
  out["union_hypothesis"] = condition(r.union_hypothesis);
  out["submodular"] = r.submodular ? condition(*r.submodular) : Json("not checked: hypothesis violated");
  out["intersection_hypothesis"] = condition(r.intersection_hypothesis);
  out["supermodular"] = r.supermodular ? condition(*r.supermodular) : Json("not checked: hypothesis violated");
  return out;
}

Json property(const PropertyResult& r) {
  Json out;
  out["name"] = r.name;
  out["status"] = r.passed ? "pass" : "fail";
  out["checked"] = r.checked;
  out["witnesses"] = r.witnesses;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json verification(const VerifyReport& r) {
  Json out;
  out["status"] = r.passed() ? "pass" : "fail";
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(property(p));
  out["properties"] = std::move(props);
  if (r.theorem1) out["conditions"] = theorem1(*r.theorem1);
  return out;
}

}  // namespace decoy::report
