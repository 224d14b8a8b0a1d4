#pragma once

// Goal-oriented limit reduction.
//
// Starting from the goal objective, a closure collects every value objective
// that could matter: requirements pinned by the regulator values of usable
// partial transitions (rule 2), and bridges from a value just reached to the
// target of another objective on the same component (rule 3). A partial
// transition is usable when each regulator value it pins is itself a valid
// objective from the starting state. The new limits then admit exactly the
// unit steps some usable partial transition covers; everything else is cut.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prn/cover.hpp"
#include "prn/dprn.hpp"
#include "prn/dynamics.hpp"
#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace prn {

struct Objective {
  int component = -1;
  Value from = 0;
  Value to = 0;

  auto operator<=>(const Objective&) const = default;
};

struct ValueChange {
  int component = -1;
  Value from = 0;
  Value to = 0;

  auto operator<=>(const ValueChange&) const = default;
};

struct PartialTransition {
  int component = -1;
  Value from = 0;
  Value to = 0;
  PartialRegulatorState aleph;

  auto operator<=>(const PartialTransition&) const = default;
};

inline RegulatorSpace regulator_space(const Prn& net, int v) {
  std::vector<Value> card;
  for (int u : net.regulators(v)) card.push_back(net.max_value(u) + 1);
  return RegulatorSpace(std::move(card));
}

// Regulator states under which the bounds allow the change at all.
inline std::vector<bool> change_enabling(const Prn& net, const Lattice& lat0, const ValueChange& c) {
  std::vector<bool> enabling(net.omega_size(c.component));
  for (int wi = 0; wi < net.omega_size(c.component); ++wi)
    enabling[wi] = enabled_by_lattice(net, Transition{c.component, c.from, c.to, wi}, lat0);
  return enabling;
}

inline std::vector<PartialRegulatorState> cover_for_change(const Prn& net, const Lattice& lat0,
                                                           const ValueChange& c, CoverStats* stats = nullptr) {
  return compute_cover_set(regulator_space(net, c.component), change_enabling(net, lat0, c), stats);
}

// Cover sets are computed once per value change, always against the initial
// bounds; reduction limits never feed back into them.
class CoverCache {
 public:
  CoverCache(const Prn& net, const Lattice& lat0) : net_(&net), lat0_(&lat0) {}

  const std::vector<PartialRegulatorState>& get(const ValueChange& c) {
    auto it = covers_.find(c);
    if (it == covers_.end()) it = covers_.emplace(c, cover_for_change(*net_, *lat0_, c)).first;
    return it->second;
  }

  int entries() const { return static_cast<int>(covers_.size()); }

 private:
  const Prn* net_;
  const Lattice* lat0_;
  std::map<ValueChange, std::vector<PartialRegulatorState>> covers_;
};

// Partial transitions an objective may use: unit steps of the objective's
// component, directed with it and confined to its value range, one per cover
// member of each such change. Empty when the objective is already settled.
inline std::vector<PartialTransition> objective_transition_set(CoverCache& covers,
                                                               const Objective& o) {
  std::vector<PartialTransition> out;
  if (o.from == o.to) return out;
  const int dir = o.to > o.from ? +1 : -1;
  for (Value from = o.from; from != o.to; from += dir) {
    const Value to = from + dir;
    for (const auto& al : covers.get({o.component, from, to})) out.push_back({o.component, from, to, al});
  }
  return out;
}

// Memoised validity of value objectives from the fixed starting state.
class ValidityCache {
 public:
  ValidityCache(const Dprn& d, const Lattice& lat0, State x, SearchMode mode)
      : d_(&d), lat0_(&lat0), x_(std::move(x)), mode_(mode) {}

  bool valid(const Objective& o) {
    auto it = memo_.find(o);
    if (it == memo_.end())
      it = memo_.emplace(o, objective_valid(*d_, *lat0_, x_, o.component, o.from, o.to, mode_, &configurations_))
               .first;
    return it->second;
  }

  const State& start() const { return x_; }
  int checks() const { return static_cast<int>(memo_.size()); }
  long long configurations() const { return configurations_; }

 private:
  const Dprn* d_;
  const Lattice* lat0_;
  State x_;
  SearchMode mode_;
  std::map<Objective, bool> memo_;
  long long configurations_ = 0;
};

// Keeps the partial transitions whose pinned regulator values are all valid
// objectives from x. Self-regulators are checked like any other regulator.
inline std::vector<PartialTransition> valid_objective_transition_set(const Prn& net, CoverCache& covers,
                                                                     ValidityCache& validity, const Objective& o) {
  std::vector<PartialTransition> out;
  for (auto& pt : objective_transition_set(covers, o)) {
    const auto& regs = net.regulators(pt.component);
    bool ok = true;
    for (std::size_t p = 0; p < regs.size() && ok; ++p) {
      if (pt.aleph[p] == kWild) continue;
      ok = validity.valid({regs[p], validity.start()[regs[p]], pt.aleph[p]});
    }
    if (ok) out.push_back(std::move(pt));
  }
  return out;
}

struct ObjectiveInfo {
  Objective obj;
  int rule = 0;  // 1 goal seed, 2 regulator requirement, 3 bridge
  std::optional<Objective> parent;
};

struct ClosureResult {
  std::vector<ObjectiveInfo> objectives;  // insertion order
  std::vector<std::pair<Objective, std::vector<PartialTransition>>> valid;
  std::vector<PartialTransition> valid_union;  // deduplicated, canonical order
  int objective_checks = 0;           // distinct validity searches run
  int covers_computed = 0;            // distinct value changes covered
  long long configurations = 0;       // configurations expanded across validity searches
};

inline ClosureResult compute_objective_closure(const Dprn& d, const Lattice& lat0, const State& x,
                                               const GoalSpec& goal, SearchMode mode = SearchMode::exact) {
  const Prn& net = d.net;
  if (!net.valid_state(x)) throw std::invalid_argument("initial state out of range");
  CoverCache covers(net, lat0);
  ValidityCache validity(d, lat0, x, mode);
  ClosureResult res;

  std::set<Objective> members;
  std::vector<std::vector<Objective>> objs_on(net.component_count());
  std::vector<std::set<std::pair<Objective, Value>>> reached_on(net.component_count());
  std::size_t cursor = 0;

  std::function<void(const Objective&, int, std::optional<Objective>)> add =
      [&](const Objective& o, int rule, std::optional<Objective> parent) {
        if (!members.insert(o).second) return;
        res.objectives.push_back({o, rule, std::move(parent)});
        objs_on[o.component].push_back(o);
        // bridge values already reached on this component to the new target
        for (const auto& [src, q] : reached_on[o.component])
          if (src != o) add({o.component, q, o.to}, 3, src);
      };

  add({goal.component, x[goal.component], goal.value}, 1, std::nullopt);

  while (cursor < res.objectives.size()) {
    const Objective o = res.objectives[cursor++].obj;
    auto pts = valid_objective_transition_set(net, covers, validity, o);
    for (const auto& pt : pts) {
      const auto& regs = net.regulators(pt.component);
      for (std::size_t p = 0; p < regs.size(); ++p) {
        if (pt.aleph[p] == kWild || regs[p] == pt.component) continue;
        add({regs[p], x[regs[p]], pt.aleph[p]}, 2, o);
      }
      if (reached_on[pt.component].insert({o, pt.to}).second) {
        // snapshot: adds may grow the list, and new objectives pair with
        // this reached value through the hook in add
        const std::vector<Objective> snapshot = objs_on[pt.component];
        for (const Objective& other : snapshot)
          if (other != o) add({pt.component, pt.to, other.to}, 3, o);
      }
    }
    res.valid.emplace_back(o, std::move(pts));
  }

  std::set<PartialTransition> uni;
  for (const auto& [o, pts] : res.valid) uni.insert(pts.begin(), pts.end());
  res.valid_union.assign(uni.begin(), uni.end());
  res.objective_checks = validity.checks();
  res.covers_computed = covers.entries();
  res.configurations = validity.configurations();
  return res;
}

// Limits admitting exactly the covered unit steps.
inline Dprn limits_from(const Prn& net, const std::vector<PartialTransition>& valid_union) {
  Dprn out{net, std::vector<Value>(net.param_count(), kNegInf), std::vector<Value>(net.param_count(), kPosInf)};
  for (const auto& pt : valid_union) {
    const auto sp = regulator_space(net, pt.component);
    detail::for_each_member(sp, pt.aleph, [&](int wi) {
      const int p = net.param_index(pt.component, wi);
      if (pt.to > pt.from)
        out.activation[p] = std::max(out.activation[p], pt.to);
      else
        out.inhibition[p] = std::min(out.inhibition[p], pt.to);
    });
  }
  return out;
}

inline Dprn reduce(const Dprn& d, const Lattice& lat0, const State& x, const GoalSpec& goal,
                   SearchMode mode = SearchMode::exact, ClosureResult* closure_out = nullptr) {
  ClosureResult closure = compute_objective_closure(d, lat0, x, goal, mode);
  Dprn out = limits_from(d.net, closure.valid_union);
  if (closure_out) *closure_out = std::move(closure);
  return out;
}

// Transitions admitted by both the limit vectors and the bounds, counted
// over the whole transition set regardless of source state.
inline int enabled_transition_count(const Dprn& d, const Lattice& lat0) {
  int n = 0;
  for (const auto& t : all_transitions(d.net))
    if (dprn_allows(d, t) && enabled_by_lattice(d.net, t, lat0)) ++n;
  return n;
}

struct ComponentLimits {
  std::vector<Value> activation;  // most permissive rising limit per component
  std::vector<Value> inhibition;  // most permissive falling limit per component
};

inline ComponentLimits component_limit_summary(const Dprn& d) {
  const Prn& net = d.net;
  ComponentLimits out{std::vector<Value>(net.component_count(), kNegInf),
                      std::vector<Value>(net.component_count(), kPosInf)};
  for (int v = 0; v < net.component_count(); ++v) {
    for (int wi = 0; wi < net.omega_size(v); ++wi) {
      const int p = net.param_index(v, wi);
      out.activation[v] = std::max(out.activation[v], d.activation[p]);
      out.inhibition[v] = std::min(out.inhibition[v], d.inhibition[p]);
    }
  }
  return out;
}

struct PreservationReport {
  int minimal_traces = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Enumerates the minimal goal traces under an explicit parametrisation set,
// reduces against the hull bounds of that set, and checks that every step of
// every minimal trace is covered by a usable partial transition and still
// fires in the reduced network along its own trace.
inline PreservationReport preservation_check(const Prn& net, const std::vector<Parametrisation>& base,
                                             const State& x, const GoalSpec& goal, int max_len,
                                             SearchMode mode = SearchMode::exact) {
  PreservationReport rep;
  const Lattice lat0 = hull_lattice(net, base);
  const Dprn d0 = unrestricted(net);
  ClosureResult closure;
  const Dprn reduced = reduce(d0, lat0, x, goal, mode, &closure);

  const auto minimal = enumerate_minimal_traces(net, base, x, goal, max_len);
  rep.minimal_traces = static_cast<int>(minimal.size());

  for (std::size_t ti = 0; ti < minimal.size(); ++ti) {
    State s = x;
    Lattice lat = lat0;
    for (std::size_t k = 0; k < minimal[ti].steps.size(); ++k) {
      const Transition& t = minimal[ti].steps[k];
      const auto sp = regulator_space(net, t.component);
      bool matched = false;
      for (const auto& pt : closure.valid_union) {
        if (pt.component != t.component || pt.from != t.from || pt.to != t.to) continue;
        if (partial_contains(sp, pt.aleph, t.omega)) {
          matched = true;
          break;
        }
      }
      if (!matched)
        rep.violations.push_back("trace " + std::to_string(ti) + " step " + std::to_string(k + 1) + " (" +
                                 format_transition(net, t) + ") matched by no usable partial transition");
      if (!dprn_enabled(reduced, t, s, lat))
        rep.violations.push_back("trace " + std::to_string(ti) + " step " + std::to_string(k + 1) + " (" +
                                 format_transition(net, t) + ") no longer fires after reduction");
      s = apply_transition(net, t, s);
      lat = restrict_lattice(net, lat, t);
    }
  }
  return rep;
}

inline std::string format_objective(const Prn& net, const Objective& o) {
  return net.name(o.component) + ": " + std::to_string(o.from) + "⇝" + std::to_string(o.to);
}

inline std::string format_partial_transition(const Prn& net, const PartialTransition& pt) {
  const auto& regs = net.regulators(pt.component);
  std::string s = net.name(pt.component) + ": " + std::to_string(pt.from) + "->" + std::to_string(pt.to) + " ⟨";
  for (std::size_t p = 0; p < regs.size(); ++p) {
    if (p) s += ' ';
    s += net.name(regs[p]) + "=" + (pt.aleph[p] == kWild ? std::string("*") : std::to_string(pt.aleph[p]));
  }
  return s + "⟩";
}

}  // namespace prn
