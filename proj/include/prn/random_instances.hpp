#pragma once

// Seeded generators for property campaigns. Everything is driven by a
// caller-owned mt19937_64 so a campaign is reproducible from one integer.

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "prn/dynamics.hpp"
#include "prn/model.hpp"
#include "prn/parametrisation.hpp"

namespace prn {

struct CampaignInstance {
  Prn net;
  std::vector<Parametrisation> base;
  State init;
  GoalSpec goal;
};

// Boolean network with 2..4 components and at most `max_regs` regulators
// per component, carrying random sign and observability labels.
inline Prn random_boolean_net(std::mt19937_64& rng, int max_regs = 3) {
  const int n = 2 + static_cast<int>(rng() % 3);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.emplace_back(1, static_cast<char>('a' + v));
  std::vector<Value> maxes(n, 1);

  std::vector<Influence> inf;
  std::vector<int> cands(n);
  std::iota(cands.begin(), cands.end(), 0);
  for (int v = 0; v < n; ++v) {
    std::shuffle(cands.begin(), cands.end(), rng);
    const int k = static_cast<int>(rng() % (std::min(max_regs, n) + 1));
    for (int i = 0; i < k; ++i) {
      ConstraintFlags flags;
      switch (rng() % 3) {
        case 0: flags.increasing = true; break;
        case 1: flags.decreasing = true; break;
        default: break;
      }
      flags.observable = rng() % 2 == 0;
      inf.push_back({cands[i], v, flags});
    }
  }
  return Prn(names, maxes, inf);
}

// Network plus a small concrete parametrisation set, an initial state and a
// goal. Tables are drawn uniformly per component, so the set is admissible
// by construction; the rare all-constrained-out network is resampled.
inline CampaignInstance random_instance(std::mt19937_64& rng, int max_regs = 3, int max_base = 4) {
  for (;;) {
    Prn net = random_boolean_net(rng, max_regs);
    const int n = net.component_count();

    std::vector<std::vector<std::vector<Value>>> tables(n);
    bool feasible = true;
    for (int v = 0; v < n && feasible; ++v) {
      tables[v] = admissible_tables(net, v);
      feasible = !tables[v].empty();
    }
    if (!feasible) continue;

    const int want = 1 + static_cast<int>(rng() % max_base);
    std::vector<Parametrisation> base;
    for (int s = 0; s < want; ++s) {
      Parametrisation p(net.param_count());
      for (int v = 0; v < n; ++v) {
        const auto& t = tables[v][rng() % tables[v].size()];
        std::copy(t.begin(), t.end(), p.begin() + net.param_offset(v));
      }
      if (std::find(base.begin(), base.end(), p) == base.end()) base.push_back(std::move(p));
    }

    State init(n);
    for (auto& x : init) x = static_cast<Value>(rng() % 2);
    GoalSpec goal{static_cast<int>(rng() % n), static_cast<Value>(rng() % 2)};
    return {std::move(net), std::move(base), std::move(init), goal};
  }
}

}  // namespace prn
