#pragma once

// The four subcommands as library functions, so tests can drive them
// without spawning processes. All output on the given stream is
// deterministic for a fixed (input, flags, seed); wall-clock timing goes
// to stderr only, gated by PRNREDUCE_LOG (quiet|info|debug).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prn/dprn.hpp"
#include "prn/dynamics.hpp"
#include "prn/model_parser.hpp"
#include "prn/random_instances.hpp"
#include "prn/reduction.hpp"
#include "prn/report.hpp"

namespace prn::cli {

enum ExitCode { kOk = 0, kUnreached = 1, kUnknown = 2, kInputError = 3 };

inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("PRNREDUCE_LOG");
    if (!env) return 1;
    const std::string s = env;
    if (s == "quiet") return 0;
    if (s == "debug") return 2;
    return 1;
  }();
  return level;
}

inline void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "prnreduce: " << msg << "\n";
}

class Timer {
 public:
  explicit Timer(std::string label) : label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start_).count();
    log(2, label_ + " took " + std::to_string(us) + " us");
  }

 private:
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

struct LoadedModel {
  ModelFile file;
  std::string name;  // base name without extension, used in reports
};

inline LoadedModel load_model(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw CliError(kInputError, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();

  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name.erase(0, slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name.erase(dot);

  try {
    if (format == "json") return {parse_model_json(buf.str()), name};
    if (format == "text") return {parse_model(buf.str()), name};
    throw CliError(kInputError, "unknown format '" + format + "' (use text or json)");
  } catch (const ParseError& e) {
    throw CliError(kInputError, path + ": " + e.what());
  }
}

// "a=0,b=1,..." overrides; every component must end up assigned.
inline State resolve_initial(const ModelFile& model, const std::string& override_spec) {
  if (override_spec.empty()) {
    if (!model.initial) throw CliError(kInputError, "no initial state in the model file and none given");
    return *model.initial;
  }
  const Prn& net = model.net;
  State x(net.component_count(), -1);
  std::istringstream in(override_spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CliError(kInputError, "bad initial assignment '" + item + "'");
    const std::string name = item.substr(0, eq);
    const int v = net.component_index(name);
    if (v < 0) throw CliError(kInputError, "unknown component '" + name + "' in --initial");
    try {
      x[v] = static_cast<Value>(std::stoi(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw CliError(kInputError, "bad value in initial assignment '" + item + "'");
    }
  }
  for (int v = 0; v < net.component_count(); ++v)
    if (x[v] == -1) throw CliError(kInputError, "--initial does not assign '" + net.name(v) + "'");
  if (!net.valid_state(x)) throw CliError(kInputError, "--initial outside the component domains");
  return x;
}

inline GoalSpec resolve_goal(const ModelFile& model, const std::string& override_spec) {
  if (override_spec.empty()) {
    if (!model.goal) throw CliError(kInputError, "no goal in the model file and none given");
    return *model.goal;
  }
  auto eq = override_spec.find('=');
  if (eq == std::string::npos) throw CliError(kInputError, "bad goal '" + override_spec + "', expected <v>=<k>");
  const std::string name = override_spec.substr(0, eq);
  const int v = model.net.component_index(name);
  if (v < 0) throw CliError(kInputError, "unknown component '" + name + "' in --goal");
  Value k = 0;
  try {
    k = static_cast<Value>(std::stoi(override_spec.substr(eq + 1)));
  } catch (const std::exception&) {
    throw CliError(kInputError, "bad value in goal '" + override_spec + "'");
  }
  if (k < 0 || k > model.net.max_value(v))
    throw CliError(kInputError, "goal value " + std::to_string(k) + " outside the domain of '" + name + "'");
  return {v, k};
}

// Bounds from the declared parametrisation sets; the widest box otherwise.
inline Lattice bounds_for(const ModelFile& model) {
  if (model.parametrisations.empty()) return initial_lattice(model.net);
  return hull_lattice(model.net, model.parametrisation_values());
}

inline SearchMode mode_from(const std::string& s) {
  if (s == "exact") return SearchMode::exact;
  if (s == "approx") return SearchMode::approx;
  throw CliError(kInputError, "unknown mode '" + s + "' (use exact or approx)");
}

// "-" replaces the human-readable summary with the JSON report on the
// output stream; any other path writes the report to that file.
inline void write_json_output(const Json& report, const std::string& json_path, std::ostream& out) {
  if (json_path == "-") {
    out << render_json(report);
    return;
  }
  std::ofstream f(json_path, std::ios::binary);
  if (!f) throw CliError(kInputError, json_path + ": cannot write");
  f << render_json(report);
}

inline std::string format_limit(Value v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "+inf";
  return std::to_string(v);
}

struct ReduceOptions {
  std::string model_path;
  std::string format = "text";
  std::string initial;
  std::string goal;
  std::string mode = "exact";
  std::string json_path;  // empty: no JSON output, "-": the out stream
};

inline int cmd_reduce(const ReduceOptions& opt, std::ostream& out) {
  Timer timer("reduce");
  LoadedModel m = load_model(opt.model_path, opt.format);
  const Prn& net = m.file.net;
  const State x0 = resolve_initial(m.file, opt.initial);
  const GoalSpec goal = resolve_goal(m.file, opt.goal);
  const SearchMode mode = mode_from(opt.mode);
  const Lattice lat0 = bounds_for(m.file);

  const Dprn d0 = unrestricted(net);
  ClosureResult closure;
  const Dprn reduced = reduce(d0, lat0, x0, goal, mode, &closure);

  ReductionInputs inputs{m.name, mode, x0, goal, {}};
  for (const auto& [pname, p] : m.file.parametrisations) inputs.set_names.push_back(pname);
  const Json report = reduction_report(net, inputs, closure, d0, reduced, lat0);
  if (opt.json_path == "-") {
    out << render_json(report);
    return kOk;
  }

  out << "model: " << m.name << "\n";
  out << "mode: " << opt.mode << "\n";
  out << "initial: " << format_state(net, x0) << "\n";
  out << "goal: " << net.name(goal.component) << "=" << goal.value << "\n";
  out << "objectives: " << closure.objectives.size() << "\n";
  for (const auto& info : closure.objectives) {
    out << "  " << format_objective(net, info.obj) << "  [rule " << info.rule;
    if (info.parent) out << " from " << format_objective(net, *info.parent);
    out << "]\n";
  }
  out << "valid transitions: " << closure.valid_union.size() << "\n";
  for (const auto& pt : closure.valid_union) out << "  " << format_partial_transition(net, pt) << "\n";
  const auto summary = component_limit_summary(reduced);
  out << "activation limits:";
  for (int v = 0; v < net.component_count(); ++v)
    out << " " << net.name(v) << "=" << format_limit(summary.activation[v]);
  out << "\ninhibition limits:";
  for (int v = 0; v < net.component_count(); ++v)
    out << " " << net.name(v) << "=" << format_limit(summary.inhibition[v]);
  out << "\nenabled transitions: " << enabled_transition_count(d0, lat0) << " -> "
      << enabled_transition_count(reduced, lat0) << "\n";

  if (!opt.json_path.empty()) write_json_output(report, opt.json_path, out);
  return kOk;
}

struct ReachOptions {
  std::string model_path;
  std::string format = "text";
  std::string initial;
  std::string goal;
  std::string mode = "exact";
  bool reduce_first = true;
  long long budget = -1;
  std::string dot_path;
};

inline int cmd_reach(const ReachOptions& opt, std::ostream& out) {
  Timer timer("reach");
  LoadedModel m = load_model(opt.model_path, opt.format);
  const Prn& net = m.file.net;
  const State x0 = resolve_initial(m.file, opt.initial);
  const GoalSpec goal = resolve_goal(m.file, opt.goal);
  const SearchMode mode = mode_from(opt.mode);
  const Lattice lat0 = bounds_for(m.file);

  const Dprn d0 = unrestricted(net);
  Dprn active = d0;
  out << "model: " << m.name << "\n";
  out << "initial: " << format_state(net, x0) << "\n";
  out << "goal: " << net.name(goal.component) << "=" << goal.value << "\n";
  out << "reduction: " << (opt.reduce_first ? "on" : "off") << "\n";

  auto report_states = [&](const char* label, const Dprn& d) {
    auto stats = explore(d, lat0, x0, mode, opt.budget);
    out << label << (stats.truncated ? ">= " : "") << stats.states << "\n";
  };

  if (opt.reduce_first) {
    active = reduce(d0, lat0, x0, goal, mode);
    report_states("states before reduction: ", d0);
    report_states("states after reduction: ", active);
  } else {
    report_states("states explored: ", d0);
  }

  const auto res = reachable(active, lat0, x0, goal, mode, opt.budget);
  const char* verdict = res.status == ReachStatus::reached     ? "reached"
                        : res.status == ReachStatus::unreached ? "unreached"
                                                               : "unknown";
  out << "verdict: " << verdict << "\n";
  out << "configurations: " << res.stats.configurations << "\n";

  if (!opt.dot_path.empty()) {
    std::set<std::pair<State, State>> seen;
    std::ostringstream dot;
    dot << "digraph dynamics {\n";
    EdgeSink sink = [&](const State& from, const Transition& t, const State& to) {
      if (!seen.insert({from, to}).second) return;
      dot << "  \"" << format_state(net, from) << "\" -> \"" << format_state(net, to) << "\" [label=\""
          << net.name(t.component) << (t.sign() > 0 ? "+" : "-") << "\"];\n";
    };
    explore(active, lat0, x0, mode, opt.budget, &sink);
    dot << "}\n";
    std::ofstream f(opt.dot_path, std::ios::binary);
    if (!f) throw CliError(kInputError, opt.dot_path + ": cannot write");
    f << dot.str();
  }

  if (res.status == ReachStatus::reached) return kOk;
  return res.status == ReachStatus::unreached ? kUnreached : kUnknown;
}

struct CoverOptions {
  std::string model_path;
  std::string format = "text";
  std::string component;
  std::string change;  // "i:j"
  std::string json_path;
};

inline int cmd_cover(const CoverOptions& opt, std::ostream& out) {
  Timer timer("cover");
  LoadedModel m = load_model(opt.model_path, opt.format);
  const Prn& net = m.file.net;

  const int v = net.component_index(opt.component);
  if (v < 0) throw CliError(kInputError, "unknown component '" + opt.component + "'");
  auto colon = opt.change.find(':');
  if (colon == std::string::npos)
    throw CliError(kInputError, "bad change '" + opt.change + "', expected <from>:<to>");
  Value from = 0, to = 0;
  try {
    from = static_cast<Value>(std::stoi(opt.change.substr(0, colon)));
    to = static_cast<Value>(std::stoi(opt.change.substr(colon + 1)));
  } catch (const std::exception&) {
    throw CliError(kInputError, "bad change '" + opt.change + "', expected <from>:<to>");
  }
  if (from < 0 || from > net.max_value(v) || to < 0 || to > net.max_value(v) || std::abs(from - to) != 1)
    throw CliError(kInputError, "change " + opt.change + " is not a unit step within the domain of '" +
                                    opt.component + "'");

  const Lattice lat0 = bounds_for(m.file);
  const ValueChange change{v, from, to};
  const auto enabling = change_enabling(net, lat0, change);
  const auto sp = regulator_space(net, v);
  const auto cover = compute_cover_set(sp, enabling);
  const auto concrete = concrete_cover_set(sp, enabling);
  if (opt.json_path == "-") {
    out << render_json(cover_report(net, m.name, v, change, cover, concrete));
    return kOk;
  }

  out << "model: " << m.name << "\n";
  out << "component: " << opt.component << "\n";
  out << "change: " << from << " -> " << to << "\n";
  out << "cover:\n";
  for (const auto& al : cover) out << "  " << format_partial(al) << "\n";
  out << "members: " << cover.size() << "\n";
  out << "spec count: " << spec_count(cover) << "\n";
  out << "concrete members: " << concrete.size() << "\n";
  out << "concrete spec count: " << spec_count(concrete) << "\n";

  if (!opt.json_path.empty())
    write_json_output(cover_report(net, m.name, v, change, cover, concrete), opt.json_path, out);
  return kOk;
}

struct OracleOptions {
  std::string model_path;
  std::string format = "text";
  std::string initial;
  std::string goal;
  int max_len = 8;
  std::uint64_t seed = 0;
  int campaign = 0;  // 0: list minimal traces of the model itself
  std::string json_path;
  long long enumeration_cap = 1ll << 22;
};

inline int cmd_oracle(const OracleOptions& opt, std::ostream& out) {
  Timer timer("oracle");

  if (opt.campaign > 0) {
    std::mt19937_64 rng(opt.seed);
    out << "campaign: " << opt.campaign << " instances, seed " << opt.seed << ", max length " << opt.max_len
        << "\n";
    int violations = 0, discrepancies = 0, traces = 0;
    for (int i = 0; i < opt.campaign; ++i) {
      auto inst = random_instance(rng);
      auto rep = preservation_check(inst.net, inst.base, inst.init, inst.goal, opt.max_len);
      traces += rep.minimal_traces;
      for (const auto& vio : rep.violations) out << "instance " << i << ": " << vio << "\n";
      violations += static_cast<int>(rep.violations.size());

      const Lattice lat0 = hull_lattice(inst.net, inst.base);
      const Dprn d0 = unrestricted(inst.net);
      const Dprn reduced = reduce(d0, lat0, inst.init, inst.goal);
      const auto before = reachable(d0, lat0, inst.init, inst.goal);
      const auto after = reachable(reduced, lat0, inst.init, inst.goal);
      if (before.status != after.status) {
        out << "instance " << i << ": verdict changed by reduction\n";
        ++discrepancies;
      }
    }
    out << "minimal traces checked: " << traces << "\n";
    out << "violations: " << violations << "\n";
    out << "verdict discrepancies: " << discrepancies << "\n";
    return violations + discrepancies == 0 ? kOk : kUnreached;
  }

  LoadedModel m = load_model(opt.model_path, opt.format);
  const Prn& net = m.file.net;
  const State x0 = resolve_initial(m.file, opt.initial);
  const GoalSpec goal = resolve_goal(m.file, opt.goal);

  std::vector<Parametrisation> base = m.file.parametrisation_values();
  if (base.empty()) {
    try {
      base = enumerate_parametrisations(net, opt.enumeration_cap);
    } catch (const CapExceeded&) {
      throw CliError(kInputError,
                     "the admissible parametrisation space is too large to enumerate; declare explicit "
                     "parametrisation sets in the model, or use the bounds-based 'reach' command instead");
    }
  }

  const auto traces = enumerate_minimal_traces(net, base, x0, goal, opt.max_len);
  if (opt.json_path == "-") {
    out << render_json(trace_report(net, m.name, traces));
    return kOk;
  }
  out << "model: " << m.name << "\n";
  out << "minimal traces (max length " << opt.max_len << "): " << traces.size() << "\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    out << "  " << i + 1 << ": " << format_state(net, traces[i].start);
    for (std::size_t k = 0; k < traces[i].steps.size(); ++k)
      out << (k ? " ; " : "  ") << format_transition(net, traces[i].steps[k]);
    out << "\n";
  }
  if (!opt.json_path.empty()) write_json_output(trace_report(net, m.name, traces), opt.json_path, out);
  return kOk;
}

}  // namespace prn::cli
