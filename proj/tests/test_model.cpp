#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "prn/model.hpp"
#include "support/fixtures.hpp"

using namespace prn;

TEST_CASE("component and regulator layout") {
  Prn net = fixtures::quad();
  REQUIRE(net.component_count() == 4);
  REQUIRE(net.component_index("a") == 0);
  REQUIRE(net.component_index("d") == 3);
  REQUIRE(net.component_index("z") == -1);
  REQUIRE(net.max_value(0) == 1);

  REQUIRE(net.regulators(0) == std::vector<int>{1, 2, 3});
  REQUIRE(net.regulators(1) == std::vector<int>{1});
  REQUIRE(net.regulators(2) == std::vector<int>{1});
  REQUIRE(net.regulators(3) == std::vector<int>{3});

  REQUIRE(net.omega_size(0) == 8);
  REQUIRE(net.omega_size(1) == 2);
  REQUIRE(net.param_count() == 8 + 2 + 2 + 2);
}

TEST_CASE("regulator states enumerate in lexicographic order") {
  Prn net = fixtures::quad();
  auto states = regulator_states(net, 0);
  REQUIRE(states.size() == 8);
  REQUIRE(states.front() == std::vector<Value>{0, 0, 0});
  REQUIRE(states[1] == std::vector<Value>{0, 0, 1});
  REQUIRE(states.back() == std::vector<Value>{1, 1, 1});
  for (int w = 0; w < 8; ++w) {
    REQUIRE(net.omega_index(0, states[w]) == w);
    REQUIRE(net.omega_values(0, w) == states[w]);
  }
}

TEST_CASE("state projection picks out the regulators") {
  Prn net = fixtures::quad();
  State x{0, 1, 0, 1};
  REQUIRE(net.omega_of_state(0, x) == net.omega_index(0, {1, 0, 1}));
  REQUIRE(net.omega_of_state(1, x) == net.omega_index(1, {1}));
  REQUIRE(net.omega_of_state(3, x) == net.omega_index(3, {1}));
}

TEST_CASE("transitions are unit steps guarded by a regulator state") {
  Prn net = fixtures::quad();
  State x{0, 1, 0, 0};
  Transition up{0, 0, 1, net.omega_index(0, {1, 0, 0})};
  Transition wrong_omega{0, 0, 1, net.omega_index(0, {0, 0, 0})};
  Transition wrong_level{0, 1, 0, net.omega_index(0, {1, 0, 0})};

  REQUIRE(enabled_in_state(net, up, x));
  REQUIRE_FALSE(enabled_in_state(net, wrong_omega, x));
  REQUIRE_FALSE(enabled_in_state(net, wrong_level, x));

  State y = apply_transition(net, up, x);
  REQUIRE(y == State{1, 1, 0, 0});
  REQUIRE_THROWS_AS(apply_transition(net, wrong_omega, x), std::logic_error);

  REQUIRE(up.sign() == 1);
  REQUIRE(wrong_level.sign() == -1);
}

TEST_CASE("all transitions are generated once, in canonical order") {
  Prn net = fixtures::quad();
  auto all = all_transitions(net);
  // Per component: one rising and one falling step per regulator state.
  REQUIRE(all.size() == 2 * 8 + 2 * 2 + 2 * 2 + 2 * 2);
  REQUIRE(std::is_sorted(all.begin(), all.end()));
  REQUIRE(std::adjacent_find(all.begin(), all.end()) == all.end());
  for (const auto& t : all) {
    REQUIRE(std::abs(t.from - t.to) == 1);
    REQUIRE(t.from >= 0);
    REQUIRE(t.to <= net.max_value(t.component));
  }
}

TEST_CASE("multi-valued components widen the transition set") {
  Prn net({"u", "v"}, {2, 1}, {{0, 1, {true, false, false}}});
  REQUIRE(net.omega_size(0) == 1);  // u has no regulators
  REQUIRE(net.omega_size(1) == 3);
  auto all = all_transitions(net);
  REQUIRE(all.size() == 2 * 2 * 1 + 2 * 1 * 3);
  State x{2, 0};
  Transition down{0, 2, 1, 0};
  REQUIRE(enabled_in_state(net, down, x));
  REQUIRE(apply_transition(net, down, x) == State{1, 0});
}

TEST_CASE("structural validation rejects malformed networks") {
  using Inf = std::vector<Influence>;
  REQUIRE_THROWS_AS(Prn({}, {}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(Prn({"a", "a"}, {1, 1}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(Prn({"a"}, {0}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(Prn({"a"}, {1}, Inf{{0, 1, {true, false, false}}}),
                    std::invalid_argument);
  // One influence may not be both increasing and decreasing.
  REQUIRE_THROWS_AS(Prn({"a", "b"}, {1, 1}, Inf{{0, 1, {true, true, false}}}),
                    std::invalid_argument);
  // Duplicate influence entries are rejected.
  REQUIRE_THROWS_AS(Prn({"a", "b"}, {1, 1},
                        Inf{{0, 1, {true, false, false}},
                            {0, 1, {false, false, true}}}),
                    std::invalid_argument);
}

TEST_CASE("state and transition formatting") {
  Prn net = fixtures::quad();
  REQUIRE(format_state(net, {0, 1, 0, 0}) == "⟨a=0 b=1 c=0 d=0⟩");
  Transition t{0, 0, 1, net.omega_index(0, {1, 0, 0})};
  REQUIRE(format_transition(net, t) == "a: 0->1 ⟨b=1 c=0 d=0⟩");
}
