#pragma once

// JSON report builders. Reports are reproducible byte for byte: keys appear
// in construction order, no timing or host data is included, infinities are
// the strings "-inf"/"+inf", wildcards are "*".

#include <string>
#include <vector>

#include <json.hpp>

#include "prn/dprn.hpp"
#include "prn/dynamics.hpp"
#include "prn/model_parser.hpp"
#include "prn/reduction.hpp"

namespace prn {

using Json = nlohmann::ordered_json;

inline Json json_limit(Value v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "+inf";
  return v;
}

inline Json json_state(const Prn& net, const State& x) {
  Json j = Json::object();
  for (int v = 0; v < net.component_count(); ++v) j[net.name(v)] = x[v];
  return j;
}

inline Json json_partial(const PartialRegulatorState& al) {
  Json j = Json::array();
  for (Value v : al) j.push_back(v == kWild ? Json("*") : Json(v));
  return j;
}

inline Json json_objective(const Prn& net, const Objective& o) {
  return Json{{"component", net.name(o.component)}, {"from", o.from}, {"to", o.to}};
}

inline Json json_partial_transition(const Prn& net, const PartialTransition& pt) {
  return Json{{"component", net.name(pt.component)},
              {"from", pt.from},
              {"to", pt.to},
              {"aleph", json_partial(pt.aleph)}};
}

inline Json json_limit_table(const Prn& net, const std::vector<Value>& limits, const std::vector<Value>& summary) {
  Json arr = Json::array();
  for (int v = 0; v < net.component_count(); ++v) {
    Json per = Json::array();
    for (int wi = 0; wi < net.omega_size(v); ++wi) {
      Json w = Json::array();
      for (Value k : net.omega_values(v, wi)) w.push_back(k);
      per.push_back(Json{{"omega", w}, {"limit", json_limit(limits[net.param_index(v, wi)])}});
    }
    arr.push_back(Json{{"component", net.name(v)}, {"summary", json_limit(summary[v])}, {"per_state", per}});
  }
  return arr;
}

struct ReductionInputs {
  std::string model_name;
  SearchMode mode;
  State initial;
  GoalSpec goal;
  std::vector<std::string> set_names;  // declared parametrisation sets used for the bounds
};

inline Json reduction_report(const Prn& net, const ReductionInputs& in, const ClosureResult& closure,
                             const Dprn& before, const Dprn& after, const Lattice& lat0) {
  Json j;
  j["model"] = in.model_name;
  j["mode"] = in.mode == SearchMode::exact ? "exact" : "approx";
  j["initial"] = json_state(net, in.initial);
  j["goal"] = Json{{"component", net.name(in.goal.component)}, {"value", in.goal.value}};
  j["parametrisation_sets"] = in.set_names;

  Json objs = Json::array();
  for (const auto& info : closure.objectives) {
    Json o = json_objective(net, info.obj);
    o["rule"] = info.rule;
    o["parent"] = info.parent ? json_objective(net, *info.parent) : Json(nullptr);
    objs.push_back(std::move(o));
  }
  j["objectives"] = std::move(objs);

  Json pts = Json::array();
  for (const auto& pt : closure.valid_union) pts.push_back(json_partial_transition(net, pt));
  j["valid_transitions"] = std::move(pts);

  const auto sum_before = component_limit_summary(before);
  const auto sum_after = component_limit_summary(after);
  j["limits"] = Json{{"activation", json_limit_table(net, after.activation, sum_after.activation)},
                     {"inhibition", json_limit_table(net, after.inhibition, sum_after.inhibition)}};
  j["input_limits"] = Json{{"activation", json_limit_table(net, before.activation, sum_before.activation)},
                           {"inhibition", json_limit_table(net, before.inhibition, sum_before.inhibition)}};

  j["enabled_transitions"] =
      Json{{"before", enabled_transition_count(before, lat0)}, {"after", enabled_transition_count(after, lat0)}};
  j["stats"] = Json{{"objectives", static_cast<int>(closure.objectives.size())},
                    {"valid_transitions", static_cast<int>(closure.valid_union.size())},
                    {"objective_checks", closure.objective_checks},
                    {"covers_computed", closure.covers_computed},
                    {"configurations", closure.configurations}};
  return j;
}

inline Json cover_report(const Prn& net, const std::string& model_name, int component, const ValueChange& change,
                         const std::vector<PartialRegulatorState>& cover,
                         const std::vector<PartialRegulatorState>& concrete) {
  Json j;
  j["model"] = model_name;
  j["component"] = net.name(component);
  j["change"] = Json{{"from", change.from}, {"to", change.to}};
  Json members = Json::array();
  for (const auto& al : cover) members.push_back(json_partial(al));
  j["members"] = std::move(members);
  j["spec_count"] = spec_count(cover);
  j["concrete_members"] = static_cast<int>(concrete.size());
  j["concrete_spec_count"] = spec_count(concrete);
  return j;
}

inline Json trace_report(const Prn& net, const std::string& model_name, const std::vector<Trace>& traces) {
  Json j;
  j["model"] = model_name;
  Json arr = Json::array();
  for (const auto& tr : traces) {
    Json steps = Json::array();
    for (const auto& t : tr.steps) {
      Json w = Json::array();
      for (Value k : net.omega_values(t.component, t.omega)) w.push_back(k);
      steps.push_back(Json{{"component", net.name(t.component)}, {"from", t.from}, {"to", t.to}, {"omega", w}});
    }
    arr.push_back(Json{{"start", json_state(net, tr.start)},
                       {"length", static_cast<int>(tr.steps.size())},
                       {"steps", std::move(steps)}});
  }
  j["minimal_traces"] = std::move(arr);
  j["count"] = static_cast<int>(traces.size());
  return j;
}

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace prn
