#include <doctest.h>

#include <algorithm>
#include <set>

#include "clab/errors.hpp"
#include "clab/model.hpp"
#include "clab/semantics.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace clab;

namespace {

ModelErrorKind error_kind(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("model parsed");
  return ModelErrorKind::Invalid;
}

const char* kTwoState =
    "agents 1\n"
    "state s\n"
    "state t\n"
    "init s\n"
    "actions 1 a\n"
    "outcome s a -> s\n"
    "default t -> t\n";

Bounds make(int agents, int states, int actions, std::vector<std::string> props, bool vary) {
  Bounds b;
  b.max_agents = agents;
  b.max_states = states;
  b.max_actions_per_agent = actions;
  b.props = std::move(props);
  b.vary_all_states = vary;
  return b;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("M1 parses with defaults filling the initial state") {
    const auto m = support::m1();
    CHECK(m.agent_count() == 2);
    CHECK(m.state_count() == 3);
    const auto s = m.state_index("s"), t = m.state_index("t"), u = m.state_index("u");
    CHECK(m.initial() == s);
    // lexicographic profile index: (a,a)=0 (a,b)=1 (b,a)=2 (b,b)=3
    CHECK(m.outcome(s, 0) == t);
    CHECK(m.outcome(s, 1) == u);
    CHECK(m.outcome(s, 2) == u);
    CHECK(m.outcome(s, 3) == u);
    for (std::size_t p = 0; p < 4; ++p) {
      CHECK(m.outcome(t, p) == t);
      CHECK(m.outcome(u, p) == u);
    }
    CHECK(m.holds("p", t));
    CHECK_FALSE(m.holds("p", s));
    CHECK(m.extension_of("q") == nullptr);
  }

  TEST_CASE("defaults make a partial table total") {
    const auto m = parse_model(kTwoState);
    CHECK(m.outcome(0, 0) == 0);
    CHECK(m.outcome(1, 0) == 1);
  }

  TEST_CASE("explicit outcomes beat defaults regardless of order") {
    const auto m = parse_model(
        "agents 1\nstate s\nstate t\ninit s\nactions 1 a b\n"
        "default s -> t\noutcome s a -> s\ndefault t -> t\n");
    CHECK(m.outcome(0, 0) == 0);
    CHECK(m.outcome(0, 1) == 1);
  }

  TEST_CASE("parse errors") {
    CHECK(error_kind("agents 1\nstate s\nactions 1 a\noutcome s a -> s\n") ==
          ModelErrorKind::MissingInit);
    CHECK(error_kind("agents 2\nstate s\ninit s\nactions 1 a\ndefault s -> s\n") ==
          ModelErrorKind::MissingActions);
    CHECK(error_kind("state s\ninit s\nactions 1 a\ndefault s -> s\n") ==
          ModelErrorKind::MissingAgents);
    CHECK(error_kind("agents 1\ninit s\nactions 1 a\n") == ModelErrorKind::NoStates);
    CHECK(error_kind("agents 1\nstate s\nstate t\ninit s\nactions 1 a\noutcome s a -> s\n") ==
          ModelErrorKind::PartialOutcome);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\noutcome s a -> x\n") ==
          ModelErrorKind::UnknownState);
    CHECK(error_kind("agents 1\nstate s\ninit x\nactions 1 a\ndefault s -> s\n") ==
          ModelErrorKind::UnknownState);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\noutcome s z -> s\n") ==
          ModelErrorKind::UnknownAction);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\nactions 2 a\ndefault s -> s\n") ==
          ModelErrorKind::UnknownAgent);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\nprop p x\ndefault s -> s\n") ==
          ModelErrorKind::UnknownState);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\nbogus\n") ==
          ModelErrorKind::Syntax);
    CHECK(error_kind("agents 1\nstate s\nstate s\ninit s\nactions 1 a\ndefault s -> s\n") ==
          ModelErrorKind::Syntax);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1 a\noutcome s a s\n") ==
          ModelErrorKind::Syntax);
    CHECK(error_kind("agents 1\nstate s\ninit s\nactions 1\ndefault s -> s\n") ==
          ModelErrorKind::Syntax);
  }

  TEST_CASE("partial outcome names the state and profile") {
    try {
      parse_model("agents 1\nstate s\nstate t\ninit s\nactions 1 a\noutcome s a -> s\n");
      FAIL("expected PartialOutcome");
    } catch (const ModelError& e) {
      const std::string msg = e.what();
      CHECK(msg.find('t') != std::string::npos);
      CHECK(msg.find("state 't' under profile a") != std::string::npos);
    }
  }

  TEST_CASE("print then parse of the fixtures is identity") {
    for (const char* name : {"upward_propagation", "covariance", "conjunction_upward",
                             "disjunction_downward", "symmetry", "matching_pennies",
                             "excluded_middle"}) {
      const auto m = support::fixture(name);
      const auto text = print_model(m);
      CHECK(text.find("default") == std::string::npos);
      CHECK_MESSAGE(parse_model(text) == m, name);
    }
  }

  TEST_CASE("printed M1 evaluates like M1 on every depth-2 formula over p") {
    const auto m = support::m1();
    const auto back = parse_model(print_model(m));
    for (const auto& f : enumerate_formulas({"p"}, 2, 2)) {
      REQUIRE(extension(m, f) == extension(back, f));
    }
  }

  TEST_CASE("singleton model prints as a six-line file") {
    CoalitionModel::Valuation v;
    v["p"] = {true};
    const CoalitionModel m(1, {"s"}, {{"a"}}, {0}, v, 0);
    const auto text = print_model(m);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(parse_model(text) == m);
  }

  TEST_CASE("empty valuation prints as a bare prop line") {
    auto text = std::string(kTwoState) + "prop p\n";
    const auto m = parse_model(text);
    REQUIRE(m.extension_of("p") != nullptr);
    const auto printed = print_model(m);
    CHECK(printed.find("prop p\n") != std::string::npos);
  }

  TEST_CASE("complement") {
    const auto m2 = support::m1();
    CHECK(complement(m2, {1}) == Coalition{2});
    CHECK(complement(m2, {}) == Coalition{1, 2});
    const CoalitionModel m3(3, {"s"}, {{"a"}, {"a"}, {"a"}}, {0}, {}, 0);
    CHECK(complement(m3, {1, 3}) == Coalition{2});
    CHECK_THROWS_AS(complement(m2, {3}), CoalitionOutOfRange);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      const auto c = Coalition::from_mask(mask);
      CHECK(complement(m3, complement(m3, c)) == c);
    }
  }

  TEST_CASE("profiles") {
    const auto m = support::m1();
    const auto one = profiles(m, {1});
    REQUIRE(one.size() == 2);
    CHECK(format_profile(m, one[0]) == "1:a");
    CHECK(format_profile(m, one[1]) == "1:b");
    const auto empty = profiles(m, {});
    REQUIRE(empty.size() == 1);
    CHECK(format_profile(m, empty[0]) == "{}");
    const auto both = profiles(m, {1, 2});
    REQUIRE(both.size() == 4);
    CHECK(format_profile(m, both[0]) == "1:a 2:a");
    CHECK(format_profile(m, both[1]) == "1:a 2:b");
    CHECK(format_profile(m, both[2]) == "1:b 2:a");
    CHECK(format_profile(m, both[3]) == "1:b 2:b");
    CHECK_THROWS_AS(profiles(m, {3}), CoalitionOutOfRange);
  }

  TEST_CASE("profile counts are products of action counts") {
    const ModelSpace space(make(3, 1, 2, {}, false));
    space.for_each(0, space.size(), [](std::uint64_t, const CoalitionModel& m) {
      for (std::uint32_t mask = 0; mask < (1u << m.agent_count()); ++mask) {
        const auto c = Coalition::from_mask(mask);
        std::size_t want = 1;
        for (int i : c.members()) want *= m.actions(i).size();
        CHECK(profiles(m, c).size() == want);
      }
      return true;
    });
  }

  TEST_CASE("apply") {
    const auto m = support::m1();
    const auto s = m.state_index("s");
    const ActionProfile a1({1}, {0}), b1({1}, {1}), a2({2}, {0}), b2({2}, {1});
    CHECK(m.state_name(apply(m, s, a1, a2)) == "t");
    CHECK(m.state_name(apply(m, s, a1, b2)) == "u");
    CHECK(m.state_name(apply(m, s, b1, a2)) == "u");
    CHECK(m.state_name(apply(m, s, a2, a1)) == "t");
    CHECK_THROWS_AS(apply(m, s, a1, a1), ProfilesNotPartition);
    CHECK_THROWS_AS(apply(m, s, a1, ActionProfile{}), ProfilesNotPartition);
  }

  TEST_CASE("enumeration counts") {
    CHECK(ModelSpace(make(1, 1, 1, {"p"}, true)).size() == 2);

    // one fixed shape, against the per-shape formula
    const ModelShape shape{2, 3, {2, 2}};
    CHECK(oracle::ipow(2, 3) * oracle::ipow(3, 4) == 648);
    CHECK(ModelSpace::count_shape(shape, 1, false) == 648);
    const ModelSpace fixed(make(2, 3, 2, {"p"}, false),
                           [&](const ModelShape& s) { return s == shape; });
    CHECK(fixed.size() == 648);

    for (const auto& props : {std::vector<std::string>{}, std::vector<std::string>{"p"},
                              std::vector<std::string>{"p", "q"}}) {
      for (bool vary : {false, true}) {
        for (int n = 1; n <= 2; ++n) {
          for (int k = 1; k <= (vary ? 2 : 3); ++k) {
            for (int a = 1; a <= 2; ++a) {
              const auto b = make(n, k, a, props, vary);
              CHECK(ModelSpace(b).size() == oracle::model_tally(b).models);
            }
          }
        }
      }
    }
    auto d = Bounds::defaults();
    CHECK(oracle::model_tally(d).models == 7832);
    CHECK(ModelSpace(d).size() == 7832);
    d.props = {"p"};
    CHECK(ModelSpace(d).size() == 1052);
  }

  TEST_CASE("enumeration is total, duplicate free, canonical and round-trips") {
    const ModelSpace space(make(2, 2, 2, {"p"}, true));
    std::set<std::string> seen;
    space.for_each(0, space.size(), [&](std::uint64_t i, const CoalitionModel& m) {
      CHECK(m.outcome_table().size() == m.state_count() * m.profile_count());
      for (auto s : m.outcome_table()) CHECK(s < m.state_count());
      CHECK(m.initial() == 0);
      CHECK(m.state_name(0) == "s1");
      CHECK(m.actions(1).front() == "a1");
      const auto text = print_model(m);
      CHECK(parse_model(text) == m);
      CHECK(space.at(i) == m);
      seen.insert(text);
      return true;
    });
    CHECK(seen.size() == space.size());
  }

  TEST_CASE("non-initial states self-loop without vary_all_states") {
    const ModelSpace space(make(2, 3, 2, {"p"}, false));
    space.for_each(0, space.size(), [&](std::uint64_t, const CoalitionModel& m) {
      for (StateIndex s = 1; s < m.state_count(); ++s) {
        for (std::size_t p = 0; p < m.profile_count(); ++p) REQUIRE(m.outcome(s, p) == s);
      }
      return true;
    });
  }

  TEST_CASE("enumeration block order") {
    const ModelSpace space(make(2, 2, 2, {}, false));
    std::vector<std::tuple<int, std::size_t, std::vector<std::size_t>>> keys;
    for (const auto& b : space.blocks()) keys.emplace_back(b.shape.agents, b.shape.states, b.shape.actions);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.size() == 2 * 2 + 2 * 4);
  }

  TEST_CASE("for_each stops when asked") {
    const ModelSpace space(Bounds::defaults());
    int calls = 0;
    space.for_each(0, space.size(), [&](std::uint64_t, const CoalitionModel&) {
      return ++calls < 5;
    });
    CHECK(calls == 5);
  }

  TEST_CASE("bounds validation") {
    CHECK_NOTHROW(Bounds::defaults().validate());
    auto b = Bounds::defaults();
    b.max_states = 0;
    CHECK_THROWS(b.validate());
    b = Bounds::defaults();
    b.min_agents = 3;
    CHECK_THROWS(b.validate());
  }

  TEST_CASE("constructor rejects invalid models") {
    CHECK_THROWS_AS(CoalitionModel(1, {}, {{"a"}}, {}, {}, 0), ModelError);
    CHECK_THROWS_AS(CoalitionModel(1, {"s"}, {{}}, {}, {}, 0), ModelError);
    CHECK_THROWS_AS(CoalitionModel(1, {"s"}, {{"a"}}, {1}, {}, 0), ModelError);
    CHECK_THROWS_AS(CoalitionModel(1, {"s"}, {{"a"}}, {0}, {}, 1), ModelError);
    CHECK_THROWS_AS(CoalitionModel(1, {"s"}, {{"a"}}, {0, 0}, {}, 0), ModelError);
  }
}
