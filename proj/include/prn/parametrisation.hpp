#pragma once

// Parametrisations and the two set representations used for trace semantics:
// explicit finite sets and an interval lattice of pointwise bounds.
//
// A parametrisation assigns every parameter (v, omega) a value in domain(v).
// Sign constraints make admissible parametrisations monotone along regulator
// chains; observability asks for at least one strict change along the chain
// and is deliberately not encoded in the lattice bounds (it is existential,
// so interval bounds cannot capture it without losing exactness elsewhere).

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "prn/model.hpp"

namespace prn {

using Parametrisation = std::vector<Value>;

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// P enables t when P[v, omega] lies at or beyond to(t) in the step direction.
inline bool enables(const Prn& net, const Parametrisation& p, const Transition& t) {
  const Value val = p[net.param_index(t.component, t.omega)];
  return t.sign() > 0 ? val >= t.to : val <= t.to;
}

inline bool satisfies_constraints_for(const Prn& net, const Parametrisation& p, int v) {
  const int off = net.param_offset(v);
  for (const auto& [pos, flags] : net.target_constraints(v)) {
    const int stride = net.stride(v, pos);
    const int card = net.max_value(net.regulators(v)[pos]) + 1;
    bool change = false;
    for (int wi = 0; wi < net.omega_size(v); ++wi) {
      if ((wi / stride) % card == 0) continue;
      const Value prev = p[off + wi - stride];
      const Value cur = p[off + wi];
      if (flags.increasing && cur < prev) return false;
      if (flags.decreasing && cur > prev) return false;
      if (cur != prev) change = true;
    }
    if (flags.observable && !change) return false;
  }
  return true;
}

inline bool satisfies_constraints(const Prn& net, const Parametrisation& p) {
  if (static_cast<int>(p.size()) != net.param_count()) return false;
  for (int v = 0; v < net.component_count(); ++v) {
    const int off = net.param_offset(v);
    for (int wi = 0; wi < net.omega_size(v); ++wi)
      if (p[off + wi] < 0 || p[off + wi] > net.max_value(v)) return false;
    if (!satisfies_constraints_for(net, p, v)) return false;
  }
  return true;
}

// All constraint-satisfying value tables for component v, lexicographically
// ascending. Throws CapExceeded if the raw table space is beyond cap.
inline std::vector<std::vector<Value>> admissible_tables(const Prn& net, int v, long long cap = (1ll << 22)) {
  const int size = net.omega_size(v);
  const Value m = net.max_value(v);
  long long raw = 1;
  for (int i = 0; i < size; ++i) {
    raw *= m + 1;
    if (raw > cap) throw CapExceeded("table space of " + net.name(v) + " exceeds cap");
  }
  std::vector<std::vector<Value>> out;
  std::vector<Value> table(size, 0);

  // local view of v's constraints, avoids rebuilding a full parametrisation
  auto ok = [&]() {
    for (const auto& [pos, flags] : net.target_constraints(v)) {
      const int stride = net.stride(v, pos);
      const int card = net.max_value(net.regulators(v)[pos]) + 1;
      bool change = false;
      for (int wi = 0; wi < size; ++wi) {
        if ((wi / stride) % card == 0) continue;
        const Value prev = table[wi - stride];
        const Value cur = table[wi];
        if (flags.increasing && cur < prev) return false;
        if (flags.decreasing && cur > prev) return false;
        if (cur != prev) change = true;
      }
      if (flags.observable && !change) return false;
    }
    return true;
  };

  while (true) {
    if (ok()) out.push_back(table);
    int i = size - 1;
    while (i >= 0 && table[i] == m) table[i--] = 0;
    if (i < 0) break;
    ++table[i];
  }
  return out;
}

// Full admissible space in lexicographic order of the flat value vector.
// Component-major concatenation keeps the global order lexicographic.
inline std::vector<Parametrisation> enumerate_parametrisations(const Prn& net, long long cap = (1ll << 22)) {
  std::vector<std::vector<std::vector<Value>>> tables;
  long long count = 1;
  for (int v = 0; v < net.component_count(); ++v) {
    tables.push_back(admissible_tables(net, v, cap));
    count *= static_cast<long long>(tables.back().size());
    if (count > cap) throw CapExceeded("admissible parametrisation count exceeds cap");
    if (count == 0) return {};
  }
  std::vector<Parametrisation> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> pick(net.component_count(), 0);
  while (true) {
    Parametrisation p;
    p.reserve(net.param_count());
    for (int v = 0; v < net.component_count(); ++v) {
      const auto& tab = tables[v][pick[v]];
      p.insert(p.end(), tab.begin(), tab.end());
    }
    out.push_back(std::move(p));
    int v = net.component_count() - 1;
    while (v >= 0 && ++pick[v] == tables[v].size()) pick[v--] = 0;
    if (v < 0) break;
  }
  return out;
}

// Pointwise bound pair. Canonical under monotone closure; empty when some
// coordinate crosses.
struct Lattice {
  Parametrisation lower;
  Parametrisation upper;

  bool is_empty() const {
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (lower[i] > upper[i]) return true;
    return false;
  }

  bool operator==(const Lattice&) const = default;
};

// Tightens v's bound slice so every sign constraint admits both bound
// vectors. One ascending pass per constrained stride, repeated to fixpoint;
// the loop settles after the first quiet round.
inline void monotone_closure_target(const Prn& net, int v, Lattice& lat) {
  const int off = net.param_offset(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [pos, flags] : net.target_constraints(v)) {
      if (!flags.increasing && !flags.decreasing) continue;
      const int stride = net.stride(v, pos);
      const int card = net.max_value(net.regulators(v)[pos]) + 1;
      for (int wi = 0; wi < net.omega_size(v); ++wi) {
        if ((wi / stride) % card == 0) continue;
        int lo = off + wi - stride;
        int hi = off + wi;
        if (flags.decreasing) std::swap(lo, hi);
        // admissible values satisfy value(lo) <= value(hi)
        if (lat.lower[hi] < lat.lower[lo]) { lat.lower[hi] = lat.lower[lo]; changed = true; }
        if (lat.upper[lo] > lat.upper[hi]) { lat.upper[lo] = lat.upper[hi]; changed = true; }
      }
    }
  }
}

inline void monotone_closure(const Prn& net, Lattice& lat) {
  for (int v = 0; v < net.component_count(); ++v) monotone_closure_target(net, v, lat);
}

// Widest bounds: every admissible parametrisation lies inside.
inline Lattice initial_lattice(const Prn& net) {
  Lattice lat;
  lat.lower.assign(net.param_count(), 0);
  lat.upper.resize(net.param_count());
  for (int v = 0; v < net.component_count(); ++v)
    for (int wi = 0; wi < net.omega_size(v); ++wi) lat.upper[net.param_index(v, wi)] = net.max_value(v);
  return lat;
}

// Tightest bounds around an explicit nonempty set.
inline Lattice hull_lattice(const Prn& net, const std::vector<Parametrisation>& ps) {
  if (ps.empty()) throw std::invalid_argument("hull of empty parametrisation set");
  Lattice lat{ps[0], ps[0]};
  for (const auto& p : ps) {
    for (int i = 0; i < net.param_count(); ++i) {
      lat.lower[i] = std::min(lat.lower[i], p[i]);
      lat.upper[i] = std::max(lat.upper[i], p[i]);
    }
  }
  monotone_closure(net, lat);
  return lat;
}

inline bool lattice_contains(const Prn& net, const Lattice& lat, const Parametrisation& p) {
  for (int i = 0; i < net.param_count(); ++i)
    if (p[i] < lat.lower[i] || p[i] > lat.upper[i]) return false;
  return true;
}

// Some parametrisation within the bounds enables t. False on empty bounds.
inline bool enabled_by_lattice(const Prn& net, const Transition& t, const Lattice& lat) {
  if (lat.is_empty()) return false;
  const int p = net.param_index(t.component, t.omega);
  return t.sign() > 0 ? lat.upper[p] >= t.to : lat.lower[p] <= t.to;
}

// Keep only parametrisations enabling t, as a bound adjustment plus closure.
// Total: an incompatible restriction yields empty bounds.
inline Lattice restrict_lattice(const Prn& net, const Lattice& lat, const Transition& t) {
  Lattice out = lat;
  const int p = net.param_index(t.component, t.omega);
  if (t.sign() > 0)
    out.lower[p] = std::max(out.lower[p], t.to);
  else
    out.upper[p] = std::min(out.upper[p], t.to);
  monotone_closure_target(net, t.component, out);
  return out;
}

// Fold of restrictions over the widest bounds; order-independent.
inline Lattice psi_abstract(const Prn& net, const std::vector<Transition>& ts) {
  Lattice lat = initial_lattice(net);
  for (const auto& t : ts) lat = restrict_lattice(net, lat, t);
  return lat;
}

inline bool enables_all(const Prn& net, const Parametrisation& p, const std::vector<Transition>& ts) {
  for (const auto& t : ts)
    if (!enables(net, p, t)) return false;
  return true;
}

// Members of a base set enabling every transition of ts.
inline std::vector<Parametrisation> filter_enabling(const Prn& net, const std::vector<Parametrisation>& base,
                                                    const std::vector<Transition>& ts) {
  std::vector<Parametrisation> out;
  for (const auto& p : base)
    if (enables_all(net, p, ts)) out.push_back(p);
  return out;
}

// Exact semantics over the full admissible space.
inline std::vector<Parametrisation> psi_concrete(const Prn& net, const std::vector<Transition>& ts,
                                                 long long cap = (1ll << 22)) {
  return filter_enabling(net, enumerate_parametrisations(net, cap), ts);
}

}  // namespace prn
