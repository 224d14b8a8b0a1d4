#pragma once

// Multivalued regulatory network structure: components with bounded integer
// activity levels, an influence graph with sign/observability constraints,
// and the parameter table layout shared by everything downstream.
//
// A component v with regulators u1 < u2 < ... < uk (component order) has one
// parameter per regulator state, i.e. per point of domain(u1) x ... x domain(uk).
// Regulator states are enumerated lexicographically with the first regulator
// most significant; their index doubles as the offset into v's table slice.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prn {

using Value = int;

using State = std::vector<Value>;

// Constraint letters attached to an influence. increasing and decreasing are
// mutually exclusive; observability may accompany either or stand alone.
struct ConstraintFlags {
  bool increasing = false;
  bool decreasing = false;
  bool observable = false;

  bool operator==(const ConstraintFlags&) const = default;
};

struct Influence {
  int source = -1;
  int target = -1;
  ConstraintFlags flags;

  bool operator==(const Influence&) const = default;
};

// Unit-step transition of one component under a fixed regulator state.
// omega indexes the regulator state of `component`.
struct Transition {
  int component = -1;
  Value from = 0;
  Value to = 0;
  int omega = -1;

  int sign() const { return to > from ? +1 : -1; }

  auto operator<=>(const Transition&) const = default;
};

namespace detail {

inline std::uint64_t hash_values(const Value* data, std::size_t n, std::uint64_t seed = 1469598103934665603ull) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(data[i]));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

struct StateHash {
  std::size_t operator()(const State& s) const {
    return static_cast<std::size_t>(detail::hash_values(s.data(), s.size()));
  }
};

class Prn {
 public:
  Prn(std::vector<std::string> names, std::vector<Value> max_values, std::vector<Influence> influences)
      : names_(std::move(names)), max_(std::move(max_values)), influences_(std::move(influences)) {
    validate_structure();
    build_tables();
  }

  int component_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }

  // -1 when no component carries the name.
  int component_index(const std::string& name) const {
    for (int v = 0; v < component_count(); ++v)
      if (names_[v] == name) return v;
    return -1;
  }

  Value max_value(int v) const { return max_[v]; }
  const std::vector<Value>& max_values() const { return max_; }

  const std::vector<Influence>& influences() const { return influences_; }

  // Regulators of v in ascending component order.
  const std::vector<int>& regulators(int v) const { return regulators_[v]; }
  int regulator_count(int v) const { return static_cast<int>(regulators_[v].size()); }

  int omega_size(int v) const { return omega_size_[v]; }

  // Mixed-radix decode of a regulator-state index into per-regulator values.
  std::vector<Value> omega_values(int v, int wi) const {
    const auto& regs = regulators_[v];
    std::vector<Value> w(regs.size());
    for (std::size_t p = 0; p < regs.size(); ++p) {
      w[p] = static_cast<Value>((wi / strides_[v][p]) % (max_[regs[p]] + 1));
    }
    return w;
  }

  int omega_index(int v, const std::vector<Value>& w) const {
    const auto& regs = regulators_[v];
    if (w.size() != regs.size()) throw std::invalid_argument("regulator state arity mismatch for " + names_[v]);
    int wi = 0;
    for (std::size_t p = 0; p < regs.size(); ++p) {
      if (w[p] < 0 || w[p] > max_[regs[p]])
        throw std::invalid_argument("regulator value out of range for " + names_[v]);
      wi += static_cast<int>(w[p]) * strides_[v][p];
    }
    return wi;
  }

  // Projection of a full state onto v's regulators.
  int omega_of_state(int v, const State& x) const {
    const auto& regs = regulators_[v];
    int wi = 0;
    for (std::size_t p = 0; p < regs.size(); ++p) wi += static_cast<int>(x[regs[p]]) * strides_[v][p];
    return wi;
  }

  int stride(int v, int pos) const { return strides_[v][pos]; }

  int param_offset(int v) const { return param_offset_[v]; }
  int param_count() const { return param_count_; }
  int param_index(int v, int wi) const { return param_offset_[v] + wi; }

  // Constraints targeting v as (position in regulators(v), flags), only for
  // influences carrying at least one letter.
  const std::vector<std::pair<int, ConstraintFlags>>& target_constraints(int v) const {
    return target_constraints_[v];
  }

  bool valid_state(const State& x) const {
    if (static_cast<int>(x.size()) != component_count()) return false;
    for (int v = 0; v < component_count(); ++v)
      if (x[v] < 0 || x[v] > max_[v]) return false;
    return true;
  }

  bool operator==(const Prn& o) const {
    return names_ == o.names_ && max_ == o.max_ && influences_ == o.influences_;
  }

 private:
  void validate_structure() {
    if (names_.empty()) throw std::invalid_argument("network has no components");
    if (names_.size() != max_.size()) throw std::invalid_argument("component/max arity mismatch");
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (names_[v].empty()) throw std::invalid_argument("empty component name");
      for (std::size_t w = v + 1; w < names_.size(); ++w)
        if (names_[v] == names_[w]) throw std::invalid_argument("duplicate component " + names_[v]);
      if (max_[v] < 1) throw std::invalid_argument("component " + names_[v] + " needs max value >= 1");
    }
    for (const auto& inf : influences_) {
      if (inf.source < 0 || inf.source >= component_count() || inf.target < 0 || inf.target >= component_count())
        throw std::invalid_argument("influence endpoint out of range");
      if (inf.flags.increasing && inf.flags.decreasing)
        throw std::invalid_argument("conflicting monotonicity on influence (" + names_[inf.source] + "," +
                                    names_[inf.target] + ")");
    }
    for (std::size_t i = 0; i < influences_.size(); ++i)
      for (std::size_t j = i + 1; j < influences_.size(); ++j)
        if (influences_[i].source == influences_[j].source && influences_[i].target == influences_[j].target)
          throw std::invalid_argument("duplicate influence (" + names_[influences_[i].source] + "," +
                                      names_[influences_[i].target] + ")");
  }

  void build_tables() {
    const int n = component_count();
    regulators_.assign(n, {});
    for (const auto& inf : influences_) regulators_[inf.target].push_back(inf.source);
    for (auto& regs : regulators_) std::sort(regs.begin(), regs.end());

    strides_.assign(n, {});
    omega_size_.assign(n, 1);
    for (int v = 0; v < n; ++v) {
      const auto& regs = regulators_[v];
      strides_[v].assign(regs.size(), 1);
      long long size = 1;
      for (int p = static_cast<int>(regs.size()) - 1; p >= 0; --p) {
        strides_[v][p] = static_cast<int>(size);
        size *= max_[regs[p]] + 1;
        if (size > (1ll << 30)) throw std::invalid_argument("regulator state space of " + names_[v] + " too large");
      }
      omega_size_[v] = static_cast<int>(size);
    }

    param_offset_.assign(n, 0);
    long long total = 0;
    for (int v = 0; v < n; ++v) {
      param_offset_[v] = static_cast<int>(total);
      total += omega_size_[v];
      if (total > (1ll << 30)) throw std::invalid_argument("parameter table too large");
    }
    param_count_ = static_cast<int>(total);

    target_constraints_.assign(n, {});
    for (const auto& inf : influences_) {
      if (!inf.flags.increasing && !inf.flags.decreasing && !inf.flags.observable) continue;
      const auto& regs = regulators_[inf.target];
      int pos = static_cast<int>(std::find(regs.begin(), regs.end(), inf.source) - regs.begin());
      target_constraints_[inf.target].emplace_back(pos, inf.flags);
    }
  }

  std::vector<std::string> names_;
  std::vector<Value> max_;
  std::vector<Influence> influences_;
  std::vector<std::vector<int>> regulators_;
  std::vector<std::vector<int>> strides_;
  std::vector<int> omega_size_;
  std::vector<int> param_offset_;
  int param_count_ = 0;
  std::vector<std::vector<std::pair<int, ConstraintFlags>>> target_constraints_;
};

// All regulator states of v in lexicographic order (index order).
inline std::vector<std::vector<Value>> regulator_states(const Prn& net, int v) {
  std::vector<std::vector<Value>> out;
  out.reserve(net.omega_size(v));
  for (int wi = 0; wi < net.omega_size(v); ++wi) out.push_back(net.omega_values(v, wi));
  return out;
}

inline bool enabled_in_state(const Prn& net, const Transition& t, const State& x) {
  return x[t.component] == t.from && net.omega_of_state(t.component, x) == t.omega;
}

inline State apply_transition(const Prn& net, const Transition& t, const State& x) {
  if (!enabled_in_state(net, t, x)) throw std::logic_error("transition not enabled in state");
  State y = x;
  y[t.component] = t.to;
  return y;
}

// Every unit-step transition of the network, in canonical order
// (component, from, to, omega). Size is sum over v of 2 * m_v * |Omega_v|.
inline std::vector<Transition> all_transitions(const Prn& net) {
  std::vector<Transition> out;
  for (int v = 0; v < net.component_count(); ++v) {
    for (Value i = 0; i <= net.max_value(v); ++i) {
      for (int d : {+1, -1}) {
        Value j = i + d;
        if (j < 0 || j > net.max_value(v)) continue;
        for (int wi = 0; wi < net.omega_size(v); ++wi) out.push_back({v, i, j, wi});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string format_state(const Prn& net, const State& x) {
  std::string s = "⟨";
  for (int v = 0; v < net.component_count(); ++v) {
    if (v) s += ' ';
    s += net.name(v) + "=" + std::to_string(x[v]);
  }
  return s + "⟩";
}

inline std::string format_regulator_state(const Prn& net, int v, int wi) {
  const auto& regs = net.regulators(v);
  auto w = net.omega_values(v, wi);
  std::string s = "⟨";
  for (std::size_t p = 0; p < regs.size(); ++p) {
    if (p) s += ' ';
    s += net.name(regs[p]) + "=" + std::to_string(w[p]);
  }
  return s + "⟩";
}

inline std::string format_transition(const Prn& net, const Transition& t) {
  return net.name(t.component) + ": " + std::to_string(t.from) + "->" + std::to_string(t.to) + " " +
         format_regulator_state(net, t.component, t.omega);
}

}  // namespace prn
