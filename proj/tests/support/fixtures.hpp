#pragma once

// Shared model builders. quad() is the running four-component example:
// two observable self-inhibiting toggles b and d, a cascade b -> c, and an
// integrator a that needs b or c high and d low to rise.

#include <vector>

#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace fixtures {

inline prn::Prn quad() {
  using prn::Influence;
  std::vector<Influence> inf{
      {1, 0, {true, false, false}},  // b -> a, increasing
      {2, 0, {true, false, true}},   // c -> a, increasing observable
      {3, 0, {false, true, true}},   // d -> a, decreasing observable
      {1, 1, {false, true, true}},   // b self, decreasing observable
      {1, 2, {true, false, true}},   // b -> c, increasing observable
      {3, 3, {false, true, true}},   // d self, decreasing observable
  };
  return prn::Prn({"a", "b", "c", "d"}, {1, 1, 1, 1}, std::move(inf));
}

// a rises iff (b or c) and not d; b, c, d tables as forced by their loops.
inline prn::Parametrisation quad_p(const prn::Prn& net) {
  prn::Parametrisation p(net.param_count(), 0);
  auto set = [&](int v, const std::vector<prn::Value>& w, prn::Value val) {
    p[net.param_index(v, net.omega_index(v, w))] = val;
  };
  set(0, {0, 0, 0}, 0);
  set(0, {0, 0, 1}, 0);
  set(0, {0, 1, 0}, 1);
  set(0, {0, 1, 1}, 0);
  set(0, {1, 0, 0}, 1);
  set(0, {1, 0, 1}, 0);
  set(0, {1, 1, 0}, 1);
  set(0, {1, 1, 1}, 0);
  set(1, {0}, 1);
  set(1, {1}, 0);
  set(2, {0}, 0);
  set(2, {1}, 1);
  set(3, {0}, 1);
  set(3, {1}, 0);
  return p;
}

// Same up to one point: a no longer rises on b alone.
inline prn::Parametrisation quad_p2(const prn::Prn& net) {
  auto p = quad_p(net);
  p[net.param_index(0, net.omega_index(0, {1, 0, 0}))] = 0;
  return p;
}

inline prn::State quad_origin() { return {0, 0, 0, 0}; }

}  // namespace fixtures
