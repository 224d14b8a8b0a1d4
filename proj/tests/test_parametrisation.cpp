#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "prn/model.hpp"
#include "prn/parametrisation.hpp"
#include "support/fixtures.hpp"

using namespace prn;

TEST_CASE("constraint checking on the quad model") {
  Prn net = fixtures::quad();
  auto p = fixtures::quad_p(net);
  REQUIRE(satisfies_constraints(net, p));
  REQUIRE(satisfies_constraints(net, fixtures::quad_p2(net)));

  SECTION("breaking monotonicity is caught") {
    auto bad = p;
    bad[net.param_index(0, net.omega_index(0, {1, 1, 0}))] = 0;
    REQUIRE_FALSE(satisfies_constraints(net, bad));
  }
  SECTION("a constant table breaks observability") {
    Parametrisation zero(net.param_count(), 0);
    // b's increasing influence on c must change c's target somewhere.
    REQUIRE_FALSE(satisfies_constraints(net, zero));
    REQUIRE_FALSE(satisfies_constraints_for(net, zero, 2));
  }
  SECTION("values outside the component range are rejected") {
    auto bad = p;
    bad[net.param_index(1, 0)] = 2;
    REQUIRE_FALSE(satisfies_constraints(net, bad));
  }
}

TEST_CASE("admissible parametrisations of the quad model") {
  Prn net = fixtures::quad();
  auto all = enumerate_parametrisations(net);
  // 20 monotone Boolean functions of three inputs, cut down by the two
  // observability requirements on c and d; the toggles admit one table each.
  REQUIRE(all.size() == 11);
  REQUIRE(std::is_sorted(all.begin(), all.end()));
  REQUIRE(std::count(all.begin(), all.end(), fixtures::quad_p(net)) == 1);
  REQUIRE(std::count(all.begin(), all.end(), fixtures::quad_p2(net)) == 1);
  for (const auto& p : all) REQUIRE(satisfies_constraints(net, p));

  // The per-component tables multiply out to the full count.
  std::size_t prod = 1;
  for (int v = 0; v < net.component_count(); ++v)
    prod *= admissible_tables(net, v).size();
  REQUIRE(prod == all.size());
}

TEST_CASE("enumeration cap aborts oversized spaces") {
  Prn net = fixtures::quad();
  REQUIRE_THROWS_AS(enumerate_parametrisations(net, 4), CapExceeded);
}

TEST_CASE("bound pairs: construction and membership") {
  Prn net = fixtures::quad();
  auto lat = initial_lattice(net);
  REQUIRE_FALSE(lat.is_empty());
  for (const auto& p : enumerate_parametrisations(net))
    REQUIRE(lattice_contains(net, lat, p));

  auto p = fixtures::quad_p(net);
  auto p2 = fixtures::quad_p2(net);
  auto hull = hull_lattice(net, {p, p2});
  REQUIRE(lattice_contains(net, hull, p));
  REQUIRE(lattice_contains(net, hull, p2));
  // The two differ at exactly one point, so the hull pins everything else.
  int loose = 0;
  for (std::size_t k = 0; k < hull.lower.size(); ++k)
    loose += hull.lower[k] != hull.upper[k];
  REQUIRE(loose == 1);

  std::vector<Parametrisation> inside;
  for (const auto& q : enumerate_parametrisations(net))
    if (lattice_contains(net, hull, q)) inside.push_back(q);
  REQUIRE(inside == std::vector<Parametrisation>{p2, p});
}

TEST_CASE("restriction tightens bounds monotonically") {
  Prn net = fixtures::quad();
  auto lat = initial_lattice(net);
  Transition t{0, 0, 1, net.omega_index(0, {1, 0, 0})};
  REQUIRE(enabled_by_lattice(net, t, lat));

  auto cut = restrict_lattice(net, lat, t);
  REQUIRE_FALSE(cut.is_empty());
  int wi = net.omega_index(0, {1, 0, 0});
  REQUIRE(cut.lower[net.param_index(0, wi)] == 1);
  // Closure pushes the raised bound up the increasing chains: with b and c
  // high and d still low the target may not drop back below 1.
  REQUIRE(cut.lower[net.param_index(0, net.omega_index(0, {1, 1, 0}))] == 1);
  REQUIRE(cut.lower[net.param_index(0, net.omega_index(0, {0, 1, 0}))] == 0);

  // The opposite step at the same point is now disabled, and forcing the
  // restriction anyway empties the space.
  Transition back{0, 1, 0, wi};
  REQUIRE_FALSE(enabled_by_lattice(net, back, cut));
  auto gone = restrict_lattice(net, cut, back);
  REQUIRE(gone.is_empty());
}

TEST_CASE("closure is idempotent and order-insensitive") {
  Prn net = fixtures::quad();
  std::mt19937_64 rng(20250819);
  auto ts = all_transitions(net);
  for (int round = 0; round < 50; ++round) {
    std::shuffle(ts.begin(), ts.end(), rng);
    int n = 1 + int(rng() % 5);
    std::vector<Transition> pick(ts.begin(), ts.begin() + n);

    auto a = psi_abstract(net, pick);
    std::shuffle(pick.begin(), pick.end(), rng);
    auto b = psi_abstract(net, pick);
    REQUIRE(a == b);
    if (!a.is_empty()) {
      auto again = a;
      monotone_closure(net, again);
      REQUIRE(again == a);
    }
  }
}

TEST_CASE("the abstraction never loses a consistent parametrisation") {
  // Exhaustive check on every admissible parametrisation of the quad model:
  // whenever p enables all transitions of a sampled set, p stays inside the
  // folded bounds.
  Prn net = fixtures::quad();
  auto all = enumerate_parametrisations(net);
  auto ts = all_transitions(net);
  std::mt19937_64 rng(777);
  for (int round = 0; round < 200; ++round) {
    std::shuffle(ts.begin(), ts.end(), rng);
    int n = 1 + int(rng() % 6);
    std::vector<Transition> pick(ts.begin(), ts.begin() + n);
    auto lat = psi_abstract(net, pick);
    for (const auto& p : all) {
      if (enables_all(net, p, pick)) {
        REQUIRE_FALSE(lat.is_empty());
        REQUIRE(lattice_contains(net, lat, p));
      }
    }
  }
}

TEST_CASE("concrete semantics refine the bounds") {
  Prn net = fixtures::quad();
  auto all = enumerate_parametrisations(net);
  auto ts = all_transitions(net);
  std::mt19937_64 rng(13579);
  for (int round = 0; round < 100; ++round) {
    std::shuffle(ts.begin(), ts.end(), rng);
    int n = 1 + int(rng() % 5);
    std::vector<Transition> pick(ts.begin(), ts.begin() + n);
    auto members = filter_enabling(net, all, pick);
    auto lat = psi_abstract(net, pick);
    for (const auto& p : members) REQUIRE(lattice_contains(net, lat, p));
  }
}

TEST_CASE("antitone law: more transitions, fewer parametrisations") {
  Prn net = fixtures::quad();
  auto all = enumerate_parametrisations(net);
  auto ts = all_transitions(net);
  std::mt19937_64 rng(24680);
  for (int round = 0; round < 100; ++round) {
    std::shuffle(ts.begin(), ts.end(), rng);
    int n = 1 + int(rng() % 4);
    std::vector<Transition> small(ts.begin(), ts.begin() + n);
    std::vector<Transition> large(ts.begin(), ts.begin() + n + 1 + int(rng() % 3));

    auto cs = filter_enabling(net, all, small);
    auto cl = filter_enabling(net, all, large);
    for (const auto& p : cl)
      REQUIRE(std::count(cs.begin(), cs.end(), p) == 1);

    auto as = psi_abstract(net, small);
    auto al = psi_abstract(net, large);
    if (!al.is_empty()) {
      for (std::size_t k = 0; k < as.lower.size(); ++k) {
        REQUIRE(as.lower[k] <= al.lower[k]);
        REQUIRE(as.upper[k] >= al.upper[k]);
      }
    }
  }
}

TEST_CASE("enabling tests agree between members and bounds on pinned lattices") {
  Prn net = fixtures::quad();
  auto p = fixtures::quad_p(net);
  Lattice pinned{p, p};
  for (const auto& t : all_transitions(net))
    REQUIRE(enables(net, p, t) == enabled_by_lattice(net, t, pinned));
}
