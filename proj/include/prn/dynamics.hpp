#pragma once

// Trace semantics and reachability.
//
// Exact mode tracks which parametrisations are still compatible with the
// steps fired so far, as a bound lattice folded along the path; a search
// configuration is the pair (state, bounds) and is dropped once the bounds
// cross. Approximate mode forgets the history and tests every step against
// the initial bounds only, over plain states.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "prn/dprn.hpp"
#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace prn {

struct Trace {
  State start;
  std::vector<Transition> steps;

  bool operator==(const Trace&) const = default;
};

struct TraceError : std::runtime_error {
  explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

// Start state plus the state after each step. Throws TraceError on a step
// that is not enabled where it fires; that is a malformed trace, not an
// unrealisable one.
inline std::vector<State> trace_states(const Prn& net, const Trace& tr) {
  std::vector<State> out{tr.start};
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const auto& t = tr.steps[i];
    if (!enabled_in_state(net, t, out.back()))
      throw TraceError("step " + std::to_string(i + 1) + " not enabled in its state");
    out.push_back(apply_transition(net, t, out.back()));
  }
  return out;
}

inline State trace_end(const Prn& net, const Trace& tr) { return trace_states(net, tr).back(); }

inline std::vector<Transition> distinct_transitions(const Trace& tr) {
  std::vector<Transition> ts = tr.steps;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

// Some member of the base set enables every step.
inline bool trace_realisable_concrete(const Prn& net, const std::vector<Parametrisation>& base, const Trace& tr) {
  trace_states(net, tr);
  const auto ts = distinct_transitions(tr);
  for (const auto& p : base)
    if (enables_all(net, p, ts)) return true;
  return false;
}

// The bound fold over the step set stays nonempty.
inline bool trace_realisable_lattice(const Prn& net, const Lattice& lat0, const Trace& tr) {
  trace_states(net, tr);
  Lattice lat = lat0;
  for (const auto& t : distinct_transitions(tr)) lat = restrict_lattice(net, lat, t);
  return !lat.is_empty();
}

enum class SearchMode { exact, approx };

enum class ReachStatus { reached, unreached, unknown };

struct ReachStats {
  long long configurations = 0;  // distinct configurations expanded
  long long states = 0;          // distinct states among them
  bool truncated = false;        // budget cut the exploration short
};

struct ReachResult {
  ReachStatus status = ReachStatus::unreached;
  ReachStats stats;
};

struct GoalSpec {
  int component = -1;
  Value value = 0;

  bool operator==(const GoalSpec&) const = default;
};

// Edge observer for exports: called once per expanded configuration edge.
using EdgeSink = std::function<void(const State&, const Transition&, const State&)>;

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<Value>& k) const {
    return static_cast<std::size_t>(hash_values(k.data(), k.size()));
  }
};

// Breadth-first over configurations. Stops early on the goal when one is
// given; otherwise sweeps the whole reachable space (subject to budget).
inline ReachResult search(const Dprn& d, const Lattice& lat0, const State& init,
                          const std::optional<GoalSpec>& goal, SearchMode mode, long long budget,
                          const EdgeSink* sink = nullptr) {
  const Prn& net = d.net;
  if (!net.valid_state(init)) throw std::invalid_argument("initial state out of range");
  ReachResult res;
  if (lat0.is_empty()) {
    res.status = goal ? ReachStatus::unreached : ReachStatus::reached;
    return res;
  }

  struct Node {
    State state;
    Lattice lat;
  };
  std::deque<Node> queue;
  std::unordered_set<std::vector<Value>, KeyHash> visited;
  std::unordered_set<State, StateHash> states_seen;

  auto key_of = [&](const State& s, const Lattice& l) {
    std::vector<Value> k = s;
    if (mode == SearchMode::exact) {
      k.insert(k.end(), l.lower.begin(), l.lower.end());
      k.insert(k.end(), l.upper.begin(), l.upper.end());
    }
    return k;
  };

  queue.push_back({init, lat0});
  visited.insert(key_of(init, lat0));

  while (!queue.empty()) {
    if (budget >= 0 && res.stats.configurations >= budget) {
      res.stats.truncated = true;
      res.status = ReachStatus::unknown;
      return res;
    }
    Node node = std::move(queue.front());
    queue.pop_front();
    ++res.stats.configurations;
    if (states_seen.insert(node.state).second) ++res.stats.states;

    if (goal && node.state[goal->component] == goal->value) {
      res.status = ReachStatus::reached;
      return res;
    }

    for (int v = 0; v < net.component_count(); ++v) {
      const int wi = net.omega_of_state(v, node.state);
      for (int dir : {+1, -1}) {
        const Value to = node.state[v] + dir;
        if (to < 0 || to > net.max_value(v)) continue;
        const Transition t{v, node.state[v], to, wi};
        if (!dprn_allows(d, t)) continue;
        const Lattice& test = mode == SearchMode::exact ? node.lat : lat0;
        if (!enabled_by_lattice(net, t, test)) continue;
        State next = node.state;
        next[v] = to;
        Lattice next_lat = mode == SearchMode::exact ? restrict_lattice(net, node.lat, t) : lat0;
        if (mode == SearchMode::exact && next_lat.is_empty()) continue;
        if (sink) (*sink)(node.state, t, next);
        auto key = key_of(next, next_lat);
        if (visited.insert(std::move(key)).second) queue.push_back({std::move(next), std::move(next_lat)});
      }
    }
  }
  res.status = goal ? ReachStatus::unreached : ReachStatus::reached;
  return res;
}

}  // namespace detail

// Goal search. Budget < 0 means unbounded; an exhausted budget reports
// unknown, never a silent miss.
inline ReachResult reachable(const Dprn& d, const Lattice& lat0, const State& init, const GoalSpec& goal,
                             SearchMode mode = SearchMode::exact, long long budget = -1) {
  if (goal.component < 0 || goal.component >= d.net.component_count())
    throw std::invalid_argument("goal component out of range");
  if (goal.value < 0 || goal.value > d.net.max_value(goal.component))
    throw std::invalid_argument("goal value out of range");
  return detail::search(d, lat0, init, GoalSpec{goal.component, goal.value}, mode, budget);
}

// Full sweep of the reachable configuration space, for stats and exports.
inline ReachStats explore(const Dprn& d, const Lattice& lat0, const State& init,
                          SearchMode mode = SearchMode::exact, long long budget = -1,
                          const EdgeSink* sink = nullptr) {
  return detail::search(d, lat0, init, std::nullopt, mode, budget, sink).stats;
}

// A value objective (component, i, j) holds in x when i = j, or some
// realisable trace from x observes value i on the component strictly before
// its end and finishes at value j. Two search phases share one visited set;
// phase two starts at every configuration observing i, x itself included.
inline bool objective_valid(const Dprn& d, const Lattice& lat0, const State& x, int component, Value i, Value j,
                            SearchMode mode = SearchMode::exact, long long* configurations = nullptr) {
  if (i == j) return true;
  const Prn& net = d.net;
  if (!net.valid_state(x)) throw std::invalid_argument("state out of range");
  if (lat0.is_empty()) return false;

  struct Node {
    State state;
    Lattice lat;
    int phase;
  };
  std::deque<Node> queue;
  std::unordered_set<std::vector<Value>, detail::KeyHash> visited;

  auto key_of = [&](const Node& n) {
    std::vector<Value> k;
    k.reserve(n.state.size() * 3 + 1);
    k.push_back(static_cast<Value>(n.phase));
    k.insert(k.end(), n.state.begin(), n.state.end());
    if (mode == SearchMode::exact) {
      k.insert(k.end(), n.lat.lower.begin(), n.lat.lower.end());
      k.insert(k.end(), n.lat.upper.begin(), n.lat.upper.end());
    }
    return k;
  };

  auto push = [&](Node n) {
    auto key = key_of(n);
    if (visited.insert(std::move(key)).second) queue.push_back(std::move(n));
  };

  push({x, lat0, 1});
  if (x[component] == i) push({x, lat0, 2});

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (configurations) ++*configurations;
    if (node.phase == 2 && node.state[component] == j) return true;

    for (int v = 0; v < net.component_count(); ++v) {
      const int wi = net.omega_of_state(v, node.state);
      for (int dir : {+1, -1}) {
        const Value to = node.state[v] + dir;
        if (to < 0 || to > net.max_value(v)) continue;
        const Transition t{v, node.state[v], to, wi};
        if (!dprn_allows(d, t)) continue;
        const Lattice& test = mode == SearchMode::exact ? node.lat : lat0;
        if (!enabled_by_lattice(net, t, test)) continue;
        State next = node.state;
        next[v] = to;
        Lattice next_lat = mode == SearchMode::exact ? restrict_lattice(net, node.lat, t) : lat0;
        if (mode == SearchMode::exact && next_lat.is_empty()) continue;
        if (node.phase == 1 && next[component] == i) push({next, next_lat, 2});
        push({std::move(next), std::move(next_lat), node.phase});
      }
    }
  }
  return false;
}

// True when a strictly shorter candidate embeds into tr as a subsequence of
// equal transitions. Greedy matching decides subsequence existence.
inline bool embeds(const std::vector<Transition>& shorter, const std::vector<Transition>& longer) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < longer.size() && i < shorter.size(); ++k)
    if (shorter[i] == longer[k]) ++i;
  return i == shorter.size();
}

inline bool is_minimal(const Trace& tr, const std::vector<Trace>& candidates) {
  for (const auto& c : candidates)
    if (c.steps.size() < tr.steps.size() && embeds(c.steps, tr.steps)) return false;
  return true;
}

// All minimal goal-reaching traces from x of length <= max_len, under an
// explicit parametrisation set. Minimal traces never revisit a state and
// never continue past the goal (the excision or prefix would dominate them),
// so the enumeration walks simple paths, stops each branch at its first goal
// hit, and prunes branches no base member can realise. Domination filtering
// over the collected set then leaves exactly the minimal traces.
inline std::vector<Trace> enumerate_minimal_traces(const Prn& net, const std::vector<Parametrisation>& base,
                                                   const State& x, const GoalSpec& goal, int max_len) {
  if (base.empty()) throw std::invalid_argument("empty parametrisation set");
  if (!net.valid_state(x)) throw std::invalid_argument("initial state out of range");
  if (x[goal.component] == goal.value) return {Trace{x, {}}};

  std::vector<Trace> collected;
  std::vector<Transition> steps;
  std::unordered_set<State, StateHash> on_path;
  std::vector<int> survivors(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) survivors[i] = static_cast<int>(i);

  std::function<void(const State&, const std::vector<int>&)> walk = [&](const State& s,
                                                                        const std::vector<int>& surv) {
    if (static_cast<int>(steps.size()) == max_len) return;
    for (int v = 0; v < net.component_count(); ++v) {
      const int wi = net.omega_of_state(v, s);
      for (int dir : {+1, -1}) {
        const Value to = s[v] + dir;
        if (to < 0 || to > net.max_value(v)) continue;
        const Transition t{v, s[v], to, wi};
        std::vector<int> next_surv;
        for (int pi : surv)
          if (enables(net, base[pi], t)) next_surv.push_back(pi);
        if (next_surv.empty()) continue;
        State next = s;
        next[v] = to;
        if (on_path.count(next)) continue;
        steps.push_back(t);
        if (next[goal.component] == goal.value) {
          collected.push_back(Trace{x, steps});
        } else {
          on_path.insert(next);
          walk(next, next_surv);
          on_path.erase(next);
        }
        steps.pop_back();
      }
    }
  };

  on_path.insert(x);
  walk(x, survivors);

  std::vector<Trace> minimal;
  for (const auto& tr : collected)
    if (is_minimal(tr, collected)) minimal.push_back(tr);
  std::sort(minimal.begin(), minimal.end(), [](const Trace& a, const Trace& b) {
    if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
    return a.steps < b.steps;
  });
  return minimal;
}

}  // namespace prn
