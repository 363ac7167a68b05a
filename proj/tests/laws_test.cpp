#include <doctest.h>

#include <algorithm>
#include <set>

#include "clab/errors.hpp"
#include "clab/laws.hpp"
#include "clab/semantics.hpp"
#include "support.hpp"

using namespace clab;

namespace {

const Law& get(const char* id) {
  const Law* l = find_law(id);
  REQUIRE_MESSAGE(l, id);
  return *l;
}

std::set<std::string> printed(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(print_formula(f));
  return out;
}

}  // namespace

TEST_SUITE("laws") {
  TEST_CASE("catalog composition") {
    const auto& cat = catalog();
    CHECK(cat.size() == 29);
    std::map<LawGroup, std::pair<int, int>> table;  // valid, invalid
    std::set<std::string> ids;
    for (const auto& l : cat) {
      ids.insert(l.id);
      if (l.group == LawGroup::Axiom || l.group == LawGroup::Extra) continue;
      (l.expected == Expectation::Valid ? table[l.group].first : table[l.group].second)++;
    }
    CHECK(ids.size() == cat.size());
    int valid = 0, invalid = 0;
    for (const auto& [g, vi] : table) {
      valid += vi.first;
      invalid += vi.second;
    }
    CHECK(valid == 11);
    CHECK(invalid == 11);
    CHECK(table[LawGroup::Coalition] == std::pair{2, 2});
    CHECK(table[LawGroup::Goal] == std::pair{2, 1});
    CHECK(table[LawGroup::Boolean] == std::pair{3, 3});
    CHECK(table[LawGroup::Strategic] == std::pair{0, 5});
    CHECK(table[LawGroup::Boundary] == std::pair{4, 0});
    CHECK(get("superadditivity-for-inability").expected == Expectation::Invalid);
    CHECK(get("strategic-impotence").expected == Expectation::Satisfiable);
    CHECK(get("distribution").expected == Expectation::Invalid);
    for (const char* id : {"axiom-T", "axiom-M", "axiom-S", "axiom-G", "iab-def"}) {
      CHECK(get(id).expected == Expectation::Valid);
      CHECK(get(id).group == LawGroup::Axiom);
    }
    CHECK(find_law("nope") == nullptr);
  }

  TEST_CASE("fixture assignment") {
    for (const auto& l : catalog()) {
      if (l.expected == Expectation::Valid) {
        CHECK_MESSAGE(!l.fixture, l.id);
      } else if (l.id != "distribution") {
        CHECK_MESSAGE(l.fixture, l.id);
      }
    }
    CHECK(get("implication-converse").fixture->model == "disjunction_downward");
    CHECK(get("implication-converse").fixture->phi == "!p");
    CHECK(get("implication-converse").fixture->psi == "q");
    CHECK(get("superadditivity-for-inability").fixture->model == "upward_propagation");
    CHECK_THROWS_AS(replay_fixture(get("distribution")), FixtureMissing);
    CHECK_THROWS_AS(replay_fixture(get("truth")), FixtureMissing);
  }

  TEST_CASE("embedded fixtures are byte-identical to the files") {
    const auto& models = fixture_models();
    CHECK(models.size() == 7);
    for (const auto& fm : models) {
      CHECK_MESSAGE(std::string(fm.text) == support::read_fixture(fm.name), fm.name);
      CHECK(load_fixture_model(fm.name) == support::fixture(fm.name));
    }
    CHECK_THROWS_AS(load_fixture_model("missing"), FixtureMissing);
  }

  TEST_CASE("every fixture replays") {
    for (const auto& l : catalog()) {
      if (!l.fixture) continue;
      const auto r = replay_fixture(l);
      CHECK_MESSAGE(r.passed, l.id);
      CHECK(r.claims.size() >= 2);
      for (const auto& c : r.claims) CHECK_MESSAGE(c.expected == c.observed, l.id << ": " << c.formula);
    }
  }

  TEST_CASE("recorded evaluations from the countermodels") {
    const auto sup = replay_fixture(get("superadditivity-for-inability"));
    CHECK(sup.claims[0].formula == "I[1] p & I[2] p -> I[1,2] (p & p)");
    const auto sym = support::fixture("symmetry");
    CHECK(satisfies(sym, sym.initial(), parse_formula("I[2] !p")));
    CHECK_FALSE(satisfies(sym, sym.initial(), parse_formula("I[1] p")));
    const auto em = support::fixture("excluded_middle");
    CHECK_FALSE(satisfies(em, em.initial(), parse_formula("I[1] p")));
    CHECK_FALSE(satisfies(em, em.initial(), parse_formula("I[1] !p")));
    const auto comp = replay_fixture(get("complementarity"));
    CHECK(comp.passed);
    CHECK(comp.claims.size() == 7 * 3);
  }

  TEST_CASE("formula pool") {
    CHECK(printed(formula_pool({"p", "q"})) ==
          std::set<std::string>{"p", "q", "!p", "!q", "true", "false", "p & q", "p | q"});
    CHECK(formula_pool({"p"}).size() == 4);
  }

  TEST_CASE("instantiations") {
    const auto anti = printed(instantiations(get("anti-monotonicity"), 2, {"p"}));
    for (const char* want : {"I[1,2] p -> I[1] p", "I[1] p -> I[] p", "I[2] p -> I[] p",
                             "I[1] p -> I[1] p", "I[] p -> I[] p"}) {
      CHECK_MESSAGE(anti.count(want), want);
    }
    // 9 pairs C <= D over {1,2}, 4 pool formulas
    CHECK(instantiations(get("anti-monotonicity"), 2, {"p"}).size() == 9 * 4);
    CHECK(instantiations(get("upward-propagation"), 2, {"p"}).size() == 5 * 4);

    const auto& sup = get("superadditivity-for-inability");
    const auto sups = instantiations(sup, 2, {"p"});
    CHECK(sups.size() == 9 * 16);
    for (const auto& f : sups) {
      const auto lhs = f.left();
      CHECK(lhs.left().coalition().disjoint_with(lhs.right().coalition()));
    }

    for (const auto& f : instantiations(get("contravariance"), 1, {"p", "q"})) {
      // I_C psi -> I_C phi with phi |= psi syntactically
      const auto phi = f.right().operand(), psi = f.left().operand();
      const bool conj = phi.kind() == FormulaKind::And && phi.left() == psi;
      const bool disj = psi.kind() == FormulaKind::Or && psi.left() == phi;
      CHECK(conj != disj);
    }

    const auto a = instantiations(get("symmetry"), 2, {"p", "q"});
    const auto b = instantiations(get("symmetry"), 2, {"p", "q"});
    CHECK(a == b);
    CHECK(printed(instantiations(get("grand-coalition"), 2, {"p"})).count("I[1,2] p <-> E[] !p"));
    CHECK(printed(instantiations(get("symmetry"), 3, {"p"})).count("I[2] p <-> I[1,3] !p"));
  }

  TEST_CASE("run_laws at default bounds reproduces the table") {
    const auto report = run_laws(Bounds::defaults());
    REQUIRE(report.rows.size() == catalog().size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      CHECK(r.id == catalog()[i].id);
      CHECK_MESSAGE(r.passed, r.id);
      CHECK(r.instantiations > 0);
      if (r.expected == Expectation::Valid) {
        CHECK(r.instantiations ==
              [&] {
                const auto& l = catalog()[i];
                if (!l.closed_universe) return instantiations(l, 2, {"p", "q"}).size();
                return instantiations(l, 1, {"p", "q"}).size() +
                       instantiations(l, 2, {"p", "q"}).size();
              }());
      }
      if (r.found) {
        REQUIRE(r.hit);
        REQUIRE(r.hit_formula);
        const bool value = satisfies(r.hit->model, r.hit->state, *r.hit_formula);
        CHECK(value == (r.expected == Expectation::Satisfiable));
      }
    }
    CHECK(report.all_passed());

    const auto table = render_report(report);
    CHECK(table.rfind("law ", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 30);
    CHECK(table.find("FAIL") == std::string::npos);
    CHECK(render_report(report) == table);
  }

  TEST_CASE("shrunk bounds") {
    Bounds one = Bounds::defaults();
    one.max_agents = 1;
    const auto up = run_law(get("upward-propagation"), one);
    // with one agent the only proper pair is [] < [1]
    CHECK(up.passed);
    REQUIRE(up.hit_formula);
    CHECK(print_formula(*up.hit_formula).rfind("I[] ", 0) == 0);
    CHECK(run_law(get("conjunction-upward"), one).passed);
    CHECK_FALSE(run_law(get("superadditivity-for-inability"), one).passed);
    CHECK_FALSE(run_law(get("opponent-ability"), one).passed);

    Bounds tiny = one;
    tiny.max_states = tiny.max_actions_per_agent = 1;
    const auto report = run_laws(tiny);
    CHECK_FALSE(report.all_passed());
    for (const auto& r : report.rows) {
      if (r.expected == Expectation::Valid) CHECK(r.passed);
    }
  }
}
