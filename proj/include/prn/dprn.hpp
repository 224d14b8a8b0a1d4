#pragma once

// Network with per-regulator-state dynamic limits. An activation limit caps
// how far a component may still rise under a given regulator state, an
// inhibition limit caps how far it may still fall. Unrestricted limits admit
// every unit step; a reduction tightens them.

#include <limits>
#include <vector>

#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace prn {

inline constexpr Value kNegInf = std::numeric_limits<Value>::min();
inline constexpr Value kPosInf = std::numeric_limits<Value>::max();

struct Dprn {
  Prn net;
  // indexed like parameter tables; activation in {1..m_v} or kNegInf,
  // inhibition in {0..m_v-1} or kPosInf
  std::vector<Value> activation;
  std::vector<Value> inhibition;
};

inline Dprn unrestricted(const Prn& net) {
  Dprn d{net, std::vector<Value>(net.param_count()), std::vector<Value>(net.param_count(), 0)};
  for (int v = 0; v < net.component_count(); ++v)
    for (int wi = 0; wi < net.omega_size(v); ++wi) d.activation[net.param_index(v, wi)] = net.max_value(v);
  return d;
}

// Limit filter alone: rising steps stay below the activation limit, falling
// steps stay above the inhibition limit.
inline bool dprn_allows(const Dprn& d, const Transition& t) {
  const int p = d.net.param_index(t.component, t.omega);
  return t.sign() > 0 ? t.from < d.activation[p] : t.from > d.inhibition[p];
}

inline bool dprn_enabled(const Dprn& d, const Transition& t, const State& x, const Lattice& lat) {
  return enabled_in_state(d.net, t, x) && dprn_allows(d, t) && enabled_by_lattice(d.net, t, lat);
}

}  // namespace prn
