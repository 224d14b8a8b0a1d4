#pragma once

// Text and JSON readers for network model files, plus canonical printers.
// The text grammar is line-oriented:
//
//   component <name> <max>
//   influence <u> -> <v> [+|-][o]
//   param <set> <v> | <u1>=<k1>,... | <value>
//   initial <v1>=<k1>,...
//   goal <v>=<k>
//
// '#' starts a comment. Parametrisation tables must be complete and satisfy
// the declared constraints; duplicates of any kind are rejected.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prn/dynamics.hpp"
#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace prn {

struct ParseError : std::runtime_error {
  int line;
  int column;

  ParseError(int line_, int column_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_) {}
};

struct ModelFile {
  Prn net;
  // named parametrisation sets, in file order; each one is complete
  std::vector<std::pair<std::string, Parametrisation>> parametrisations;
  std::optional<State> initial;
  std::optional<GoalSpec> goal;

  std::vector<Parametrisation> parametrisation_values() const {
    std::vector<Parametrisation> out;
    out.reserve(parametrisations.size());
    for (const auto& [name, p] : parametrisations) out.push_back(p);
    return out;
  }
};

namespace detail {

struct Raw {
  int line;
  std::string text;
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline int column_of(const std::string& text, const std::string& needle) {
  auto pos = text.find(needle);
  return pos == std::string::npos ? 1 : static_cast<int>(pos) + 1;
}

inline Value parse_int(const Raw& raw, const std::string& tok, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size())
    throw ParseError(raw.line, column_of(raw.text, tok), std::string("expected ") + what + ", got '" + tok + "'");
  if (v < -(1 << 20) || v > (1 << 20))
    throw ParseError(raw.line, column_of(raw.text, tok), std::string(what) + " out of range: '" + tok + "'");
  return static_cast<Value>(v);
}

// "u1=k1,u2=k2" into pairs; empty input gives an empty list.
inline std::vector<std::pair<std::string, Value>> parse_assignments(const Raw& raw, const std::string& list) {
  std::vector<std::pair<std::string, Value>> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    if (std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError(raw.line, column_of(raw.text, item), "expected <name>=<value> in '" + item + "'");
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    std::string name = strip(item.substr(0, eq));
    std::string val = strip(item.substr(eq + 1));
    if (name.empty())
      throw ParseError(raw.line, column_of(raw.text, item), "missing name before '=' in '" + item + "'");
    out.emplace_back(name, parse_int(raw, val, "value"));
  }
  return out;
}

}  // namespace detail

inline ModelFile parse_model(const std::string& text) {
  using detail::Raw;

  std::vector<Raw> components, influences, params, initials, goals;
  {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto toks = detail::split_ws(line);
      if (toks.empty()) continue;
      Raw raw{no, line};
      if (toks[0] == "component")
        components.push_back(raw);
      else if (toks[0] == "influence")
        influences.push_back(raw);
      else if (toks[0] == "param")
        params.push_back(raw);
      else if (toks[0] == "initial")
        initials.push_back(raw);
      else if (toks[0] == "goal")
        goals.push_back(raw);
      else
        throw ParseError(no, detail::column_of(line, toks[0]), "unknown directive '" + toks[0] + "'");
    }
  }

  std::vector<std::string> names;
  std::vector<Value> maxes;
  for (const auto& raw : components) {
    auto toks = detail::split_ws(raw.text);
    if (toks.size() != 3)
      throw ParseError(raw.line, 1, "expected 'component <name> <max>'");
    if (std::find(names.begin(), names.end(), toks[1]) != names.end())
      throw ParseError(raw.line, detail::column_of(raw.text, toks[1]), "duplicate component '" + toks[1] + "'");
    Value m = detail::parse_int(raw, toks[2], "maximum value");
    if (m < 1)
      throw ParseError(raw.line, detail::column_of(raw.text, toks[2]), "maximum value must be at least 1");
    names.push_back(toks[1]);
    maxes.push_back(m);
  }
  if (names.empty()) throw ParseError(1, 1, "no components declared");

  auto component_of = [&](const Raw& raw, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw ParseError(raw.line, detail::column_of(raw.text, name), "unknown component '" + name + "'");
    return static_cast<int>(it - names.begin());
  };

  std::vector<Influence> inf;
  for (const auto& raw : influences) {
    auto toks = detail::split_ws(raw.text);
    if (toks.size() < 4 || toks.size() > 5 || toks[2] != "->")
      throw ParseError(raw.line, 1, "expected 'influence <u> -> <v> [+|-][o]'");
    Influence e{component_of(raw, toks[1]), component_of(raw, toks[3]), {}};
    if (toks.size() == 5) {
      const std::string& f = toks[4];
      bool ok = !f.empty() && f.size() <= 2;
      for (char c : f) ok = ok && (c == '+' || c == '-' || c == 'o');
      if (ok) {
        e.flags.increasing = f.front() == '+';
        e.flags.decreasing = f.front() == '-';
        e.flags.observable = f.back() == 'o';
        ok = f.size() == 1 || (f.front() != 'o' && f.back() == 'o');
      }
      if (!ok)
        throw ParseError(raw.line, detail::column_of(raw.text, f), "bad constraint flags '" + f + "'");
    }
    for (const auto& prev : inf) {
      if (prev.source == e.source && prev.target == e.target)
        throw ParseError(raw.line, detail::column_of(raw.text, toks[1]),
                         "duplicate influence " + toks[1] + " -> " + toks[3]);
    }
    inf.push_back(e);
  }

  Prn net = [&] {
    try {
      return Prn(names, maxes, inf);
    } catch (const std::invalid_argument& e) {
      throw ParseError(influences.empty() ? components.front().line : influences.front().line, 1, e.what());
    }
  }();

  ModelFile model{std::move(net), {}, std::nullopt, std::nullopt};
  const Prn& n = model.net;

  // name -> (table, per-row line filled marker)
  std::vector<std::pair<std::string, std::vector<std::pair<Value, bool>>>> tables;
  for (const auto& raw : params) {
    std::string rest = raw.text;
    rest.erase(0, rest.find("param") + 5);
    std::vector<std::string> parts;
    {
      std::string item;
      std::istringstream in(rest);
      while (std::getline(in, item, '|')) parts.push_back(item);
    }
    if (parts.size() != 3)
      throw ParseError(raw.line, 1, "expected 'param <set> <v> | <assignments> | <value>'");
    auto head = detail::split_ws(parts[0]);
    if (head.size() != 2)
      throw ParseError(raw.line, 1, "expected parametrisation name and component before the first '|'");
    const std::string& pname = head[0];
    const int v = component_of(raw, head[1]);

    const auto& regs = n.regulators(v);
    auto given = detail::parse_assignments(raw, parts[1]);
    if (given.size() != regs.size())
      throw ParseError(raw.line, detail::column_of(raw.text, "|"),
                       "expected " + std::to_string(regs.size()) + " regulator assignment(s) for '" + head[1] +
                           "', got " + std::to_string(given.size()));
    std::vector<Value> w(regs.size());
    std::vector<bool> seen(regs.size(), false);
    for (const auto& [rname, rval] : given) {
      const int u = component_of(raw, rname);
      auto it = std::find(regs.begin(), regs.end(), u);
      if (it == regs.end())
        throw ParseError(raw.line, detail::column_of(raw.text, rname),
                         "'" + rname + "' does not regulate '" + head[1] + "'");
      const auto pos = it - regs.begin();
      if (seen[pos])
        throw ParseError(raw.line, detail::column_of(raw.text, rname), "regulator '" + rname + "' assigned twice");
      seen[pos] = true;
      if (rval < 0 || rval > n.max_value(u))
        throw ParseError(raw.line, detail::column_of(raw.text, rname),
                         "value " + std::to_string(rval) + " outside the domain of '" + rname + "'");
      w[pos] = rval;
    }

    auto vals = detail::split_ws(parts[2]);
    if (vals.size() != 1)
      throw ParseError(raw.line, 1, "expected a single target value after the second '|'");
    Value target = detail::parse_int(raw, vals[0], "target value");
    if (target < 0 || target > n.max_value(v))
      throw ParseError(raw.line, detail::column_of(raw.text, vals[0]),
                       "target " + std::to_string(target) + " outside the domain of '" + head[1] + "'");

    auto table = std::find_if(tables.begin(), tables.end(), [&](const auto& t) { return t.first == pname; });
    if (table == tables.end()) {
      tables.push_back({pname, std::vector<std::pair<Value, bool>>(n.param_count(), {0, false})});
      table = tables.end() - 1;
    }
    auto& slot = table->second[n.param_index(v, n.omega_index(v, w))];
    if (slot.second)
      throw ParseError(raw.line, 1, "duplicate row for '" + pname + "' on '" + head[1] + "'");
    slot = {target, true};
  }

  for (auto& [pname, rows] : tables) {
    Parametrisation p(n.param_count());
    for (int v = 0; v < n.component_count(); ++v) {
      for (int wi = 0; wi < n.omega_size(v); ++wi) {
        const auto& slot = rows[n.param_index(v, wi)];
        if (!slot.second)
          throw ParseError(params.back().line, 1,
                           "parametrisation '" + pname + "' is missing the row for " + n.name(v) + " at " +
                               format_regulator_state(n, v, wi));
        p[n.param_index(v, wi)] = slot.first;
      }
    }
    if (!satisfies_constraints(n, p))
      throw ParseError(params.back().line, 1,
                       "parametrisation '" + pname + "' violates the influence constraints");
    model.parametrisations.emplace_back(pname, std::move(p));
  }

  if (initials.size() > 1) throw ParseError(initials[1].line, 1, "duplicate initial directive");
  if (!initials.empty()) {
    const auto& raw = initials.front();
    auto toks = detail::split_ws(raw.text);
    if (toks.size() < 2) throw ParseError(raw.line, 1, "expected 'initial <v1>=<k1>,...'");
    std::string list;
    for (std::size_t i = 1; i < toks.size(); ++i) list += toks[i];
    State x(n.component_count(), -1);
    for (const auto& [cname, cval] : detail::parse_assignments(raw, list)) {
      const int v = component_of(raw, cname);
      if (x[v] != -1)
        throw ParseError(raw.line, detail::column_of(raw.text, cname), "component '" + cname + "' assigned twice");
      x[v] = cval;
    }
    for (int v = 0; v < n.component_count(); ++v)
      if (x[v] == -1)
        throw ParseError(raw.line, 1, "initial state does not assign '" + n.name(v) + "'");
    if (!n.valid_state(x)) throw ParseError(raw.line, 1, "initial state outside the component domains");
    model.initial = std::move(x);
  }

  if (goals.size() > 1) throw ParseError(goals[1].line, 1, "duplicate goal directive");
  if (!goals.empty()) {
    const auto& raw = goals.front();
    auto toks = detail::split_ws(raw.text);
    if (toks.size() != 2) throw ParseError(raw.line, 1, "expected 'goal <v>=<k>'");
    auto assigns = detail::parse_assignments(raw, toks[1]);
    if (assigns.size() != 1) throw ParseError(raw.line, 1, "expected exactly one goal assignment");
    const int v = component_of(raw, assigns[0].first);
    const Value k = assigns[0].second;
    if (k < 0 || k > n.max_value(v))
      throw ParseError(raw.line, detail::column_of(raw.text, toks[1]),
                       "goal value " + std::to_string(k) + " outside the domain of '" + assigns[0].first + "'");
    model.goal = GoalSpec{v, k};
  }

  return model;
}

inline std::string print_model(const ModelFile& model) {
  const Prn& n = model.net;
  std::ostringstream out;
  for (int v = 0; v < n.component_count(); ++v)
    out << "component " << n.name(v) << " " << n.max_value(v) << "\n";
  out << "\n";
  for (const auto& e : n.influences()) {
    out << "influence " << n.name(e.source) << " -> " << n.name(e.target);
    std::string f;
    if (e.flags.increasing) f += '+';
    if (e.flags.decreasing) f += '-';
    if (e.flags.observable) f += 'o';
    if (!f.empty()) out << " " << f;
    out << "\n";
  }
  for (const auto& [pname, p] : model.parametrisations) {
    out << "\n";
    for (int v = 0; v < n.component_count(); ++v) {
      const auto& regs = n.regulators(v);
      for (int wi = 0; wi < n.omega_size(v); ++wi) {
        auto w = n.omega_values(v, wi);
        out << "param " << pname << " " << n.name(v) << " |";
        for (std::size_t k = 0; k < regs.size(); ++k)
          out << (k ? "," : " ") << n.name(regs[k]) << "=" << w[k];
        out << " | " << p[n.param_index(v, wi)] << "\n";
      }
    }
  }
  if (model.initial) {
    out << "\ninitial ";
    for (int v = 0; v < n.component_count(); ++v) out << (v ? "," : "") << n.name(v) << "=" << (*model.initial)[v];
    out << "\n";
  }
  if (model.goal)
    out << "goal " << n.name(model.goal->component) << "=" << model.goal->value << "\n";
  return out.str();
}

// JSON mirror of the same content; shares all semantic validation by
// printing to the line grammar and reusing its parser for the heavy checks.
inline ModelFile parse_model_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, 1, std::string("bad JSON: ") + e.what());
  }
  auto fail = [](const std::string& msg) -> ParseError { return ParseError(1, 1, msg); };
  if (!j.is_object()) throw fail("top level must be an object");
  for (const auto& [key, val] : j.items()) {
    if (key != "components" && key != "influences" && key != "parametrisations" && key != "initial" && key != "goal")
      throw fail("unknown key '" + key + "'");
  }

  std::ostringstream lines;
  if (!j.contains("components") || !j["components"].is_array()) throw fail("missing components array");
  for (const auto& c : j["components"]) {
    if (!c.is_object() || !c.contains("name") || !c.contains("max"))
      throw fail("component entries need name and max");
    lines << "component " << c["name"].get<std::string>() << " " << c["max"].get<long long>() << "\n";
  }
  for (const auto& e : j.value("influences", nlohmann::json::array())) {
    if (!e.is_object() || !e.contains("source") || !e.contains("target"))
      throw fail("influence entries need source and target");
    lines << "influence " << e["source"].get<std::string>() << " -> " << e["target"].get<std::string>();
    std::string f = e.value("sign", "");
    if (e.value("observable", false)) f += 'o';
    if (!f.empty()) lines << " " << f;
    lines << "\n";
  }
  for (const auto& ps : j.value("parametrisations", nlohmann::json::array())) {
    if (!ps.is_object() || !ps.contains("name") || !ps.contains("rows"))
      throw fail("parametrisation entries need name and rows");
    for (const auto& row : ps["rows"]) {
      if (!row.is_object() || !row.contains("component") || !row.contains("omega") || !row.contains("value"))
        throw fail("parametrisation rows need component, omega and value");
      lines << "param " << ps["name"].get<std::string>() << " " << row["component"].get<std::string>() << " |";
      // omega pairs regulator names with values to stay order-independent
      bool first = true;
      for (const auto& [rname, rval] : row["omega"].items()) {
        lines << (first ? " " : ",") << rname << "=" << rval.get<long long>();
        first = false;
      }
      lines << " | " << row["value"].get<long long>() << "\n";
    }
  }
  if (j.contains("initial")) {
    if (!j["initial"].is_object()) throw fail("initial must be an object");
    lines << "initial ";
    bool first = true;
    for (const auto& [cname, cval] : j["initial"].items()) {
      lines << (first ? "" : ",") << cname << "=" << cval.get<long long>();
      first = false;
    }
    lines << "\n";
  }
  if (j.contains("goal")) {
    if (!j["goal"].is_object() || !j["goal"].contains("component") || !j["goal"].contains("value"))
      throw fail("goal needs component and value");
    lines << "goal " << j["goal"]["component"].get<std::string>() << "=" << j["goal"]["value"].get<long long>()
          << "\n";
  }
  try {
    return parse_model(lines.str());
  } catch (const ParseError& e) {
    throw ParseError(1, 1, std::string("in JSON model: ") + e.what());
  }
}

inline std::string print_model_json(const ModelFile& model) {
  const Prn& n = model.net;
  nlohmann::ordered_json j;
  j["components"] = nlohmann::ordered_json::array();
  for (int v = 0; v < n.component_count(); ++v)
    j["components"].push_back({{"name", n.name(v)}, {"max", n.max_value(v)}});
  j["influences"] = nlohmann::ordered_json::array();
  for (const auto& e : n.influences()) {
    nlohmann::ordered_json o{{"source", n.name(e.source)}, {"target", n.name(e.target)}};
    if (e.flags.increasing) o["sign"] = "+";
    if (e.flags.decreasing) o["sign"] = "-";
    if (e.flags.observable) o["observable"] = true;
    j["influences"].push_back(std::move(o));
  }
  j["parametrisations"] = nlohmann::ordered_json::array();
  for (const auto& [pname, p] : model.parametrisations) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int v = 0; v < n.component_count(); ++v) {
      const auto& regs = n.regulators(v);
      for (int wi = 0; wi < n.omega_size(v); ++wi) {
        auto w = n.omega_values(v, wi);
        nlohmann::ordered_json omega;
        for (std::size_t k = 0; k < regs.size(); ++k) omega[n.name(regs[k])] = w[k];
        rows.push_back({{"component", n.name(v)}, {"omega", std::move(omega)}, {"value", p[n.param_index(v, wi)]}});
      }
    }
    j["parametrisations"].push_back({{"name", pname}, {"rows", std::move(rows)}});
  }
  if (model.initial) {
    nlohmann::ordered_json init;
    for (int v = 0; v < n.component_count(); ++v) init[n.name(v)] = (*model.initial)[v];
    j["initial"] = std::move(init);
  }
  if (model.goal)
    j["goal"] = {{"component", n.name(model.goal->component)}, {"value", model.goal->value}};
  return j.dump(2) + "\n";
}

}  // namespace prn
