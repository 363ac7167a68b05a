#include "clab/laws.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "clab/errors.hpp"
#include "clab/semantics.hpp"

namespace clab {

namespace {

using F = Formula;

F I(const Coalition& c, F f) { return F::inability(c, std::move(f)); }
F E(const Coalition& c, F f) { return F::ability(c, std::move(f)); }

Law law(std::string id, std::string principle, LawGroup group, Expectation expected,
        CoalitionParams coalitions, FormulaParams formulas, bool closed,
        std::function<Formula(const LawArgs&)> scheme, std::optional<Fixture> fixture = {}) {
  return Law{std::move(id), std::move(principle), group, expected, coalitions, formulas,
             closed,        std::move(scheme),     std::move(fixture)};
}

Fixture universal_top(std::vector<FixtureClaim> claims) {
  return Fixture{"", {1}, {}, "true", "true", std::move(claims)};
}

std::vector<Law> build_catalog() {
  using G = LawGroup;
  using X = Expectation;
  using CP = CoalitionParams;
  using FP = FormulaParams;
  std::vector<Law> out;

  out.push_back(law("anti-monotonicity", "Anti-monotonicity", G::Coalition, X::Valid,
                    CP::SubsetPair, FP::One, false,
                    [](const LawArgs& a) { return F::implies(I(a.d, a.phi), I(a.c, a.phi)); }));
  out.push_back(law(
      "upward-propagation", "Upward propagation", G::Coalition, X::Invalid, CP::ProperSubsetPair,
      FP::One, false, [](const LawArgs& a) { return F::implies(I(a.c, a.phi), I(a.d, a.phi)); },
      Fixture{"upward_propagation",
              {1},
              {1, 2},
              "p",
              "",
              {{"I[1] p", true}, {"I[1,2] p", false}, {"E[1,2] p", true}}}));
  out.push_back(law("subadditivity", "Subadditivity", G::Coalition, X::Valid, CP::AnyPair,
                    FP::One, false, [](const LawArgs& a) {
                      return F::implies(I(a.c.united(a.d), a.phi),
                                        F::conj(I(a.c, a.phi), I(a.d, a.phi)));
                    }));
  out.push_back(law(
      "superadditivity-for-inability", "Superadditivity", G::Coalition, X::Invalid,
      CP::DisjointPair, FP::Two, false,
      [](const LawArgs& a) {
        return F::implies(F::conj(I(a.c, a.phi), I(a.d, a.psi)),
                          I(a.c.united(a.d), F::conj(a.phi, a.psi)));
      },
      Fixture{"upward_propagation",
              {1},
              {2},
              "p",
              "p",
              {{"I[1] p", true}, {"I[2] p", true}, {"I[1,2] p", false}}}));

  out.push_back(law("contravariance", "Contravariance", G::Goal, X::Valid, CP::One,
                    FP::Entailment, false,
                    [](const LawArgs& a) { return F::implies(I(a.c, a.psi), I(a.c, a.phi)); }));
  out.push_back(law(
      "covariance", "Covariance", G::Goal, X::Invalid, CP::One, FP::Entailment, false,
      [](const LawArgs& a) { return F::implies(I(a.c, a.phi), I(a.c, a.psi)); },
      Fixture{"covariance",
              {1},
              {},
              "p & q",
              "p",
              {{"I[1] p", false}, {"I[1] (p & q)", true}, {"E[1] p", true}}}));
  out.push_back(law("absorption", "Absorption", G::Goal, X::Valid, CP::One, FP::Two, false,
                    [](const LawArgs& a) {
                      return F::implies(I(a.c, a.phi), I(a.c, F::conj(a.phi, a.psi)));
                    }));

  out.push_back(law("conjunction-downward", "Conjunction, downward", G::Boolean, X::Valid,
                    CP::One, FP::Two, false, [](const LawArgs& a) {
                      return F::implies(F::disj(I(a.c, a.phi), I(a.c, a.psi)),
                                        I(a.c, F::conj(a.phi, a.psi)));
                    }));
  out.push_back(law(
      "conjunction-upward", "Conjunction, upward", G::Boolean, X::Invalid, CP::One, FP::Two,
      false,
      [](const LawArgs& a) {
        return F::implies(I(a.c, F::conj(a.phi, a.psi)),
                          F::disj(I(a.c, a.phi), I(a.c, a.psi)));
      },
      Fixture{"conjunction_upward",
              {1},
              {},
              "p",
              "q",
              {{"I[1] p", false}, {"I[1] q", false}, {"I[1] (p & q)", true}}}));
  out.push_back(law("disjunction-upward", "Disjunction, upward", G::Boolean, X::Valid, CP::One,
                    FP::Two, false, [](const LawArgs& a) {
                      return F::implies(I(a.c, F::disj(a.phi, a.psi)),
                                        F::conj(I(a.c, a.phi), I(a.c, a.psi)));
                    }));
  out.push_back(law(
      "disjunction-downward", "Disjunction, downward", G::Boolean, X::Invalid, CP::One, FP::Two,
      false,
      [](const LawArgs& a) {
        return F::implies(F::conj(I(a.c, a.phi), I(a.c, a.psi)),
                          I(a.c, F::disj(a.phi, a.psi)));
      },
      Fixture{"disjunction_downward",
              {1},
              {},
              "p",
              "q",
              {{"I[1] p", true},
               {"I[1] q", true},
               {"E[1] (p | q)", true},
               {"I[1] (p | q)", false}}}));
  out.push_back(law("implication-distribution", "Implication", G::Boolean, X::Valid, CP::One,
                    FP::Two, false, [](const LawArgs& a) {
                      return F::implies(I(a.c, F::implies(a.phi, a.psi)),
                                        F::conj(I(a.c, F::neg(a.phi)), I(a.c, a.psi)));
                    }));
  out.push_back(law(
      "implication-converse", "Implication converse", G::Boolean, X::Invalid, CP::One, FP::Two,
      false,
      [](const LawArgs& a) {
        return F::implies(F::conj(I(a.c, F::neg(a.phi)), I(a.c, a.psi)),
                          I(a.c, F::implies(a.phi, a.psi)));
      },
      Fixture{"disjunction_downward",
              {1},
              {},
              "!p",
              "q",
              {{"I[1] !!p", true}, {"I[1] q", true}, {"I[1] (!p -> q)", false}}}));

  out.push_back(law(
      "excluded-middle", "Excluded middle", G::Strategic, X::Invalid, CP::One, FP::One, false,
      [](const LawArgs& a) { return F::disj(I(a.c, a.phi), I(a.c, F::neg(a.phi))); },
      Fixture{"excluded_middle", {1}, {}, "p", "", {{"I[1] p", false}, {"I[1] !p", false}}}));
  out.push_back(law(
      "exclusivity", "Exclusivity", G::Strategic, X::Invalid, CP::One, FP::One, true,
      [](const LawArgs& a) { return F::implies(E(a.c, a.phi), I(a.complement, a.phi)); },
      universal_top({{"E{C} true", true}, {"E{Cbar} true", true}, {"I{Cbar} true", false}})));
  out.push_back(law(
      "symmetry", "Symmetry", G::Strategic, X::Invalid, CP::One, FP::One, true,
      [](const LawArgs& a) { return F::iff(I(a.c, a.phi), I(a.complement, F::neg(a.phi))); },
      Fixture{"symmetry",
              {1},
              {},
              "p",
              "",
              {{"I[1] p", false}, {"I[2] !p", true}, {"E[1] p", true}}}));
  out.push_back(law(
      "complementarity", "Complementarity", G::Strategic, X::Invalid, CP::One, FP::One, true,
      [](const LawArgs& a) { return F::disj(I(a.c, a.phi), I(a.complement, a.phi)); },
      universal_top({{"I{C} true", false}, {"I{Cbar} true", false}})));
  out.push_back(law(
      "opponent-ability", "Opponent ability", G::Strategic, X::Invalid, CP::One, FP::One, true,
      [](const LawArgs& a) { return F::implies(I(a.c, a.phi), E(a.complement, F::neg(a.phi))); },
      Fixture{"matching_pennies", {1}, {}, "p", "", {{"I[1] p", true}, {"E[2] !p", false}}}));

  out.push_back(law("grand-coalition", "Grand coalition", G::Boundary, X::Valid, CP::None,
                    FP::One, true, [](const LawArgs& a) {
                      return F::iff(I(a.grand, a.phi), E(Coalition{}, F::neg(a.phi)));
                    }));
  out.push_back(law("empty-coalition", "Empty coalition", G::Boundary, X::Valid, CP::None,
                    FP::One, true, [](const LawArgs& a) {
                      return F::iff(I(Coalition{}, a.phi), E(a.grand, F::neg(a.phi)));
                    }));
  out.push_back(law("contradiction", "Contradiction", G::Boundary, X::Valid, CP::One, FP::None,
                    false, [](const LawArgs& a) { return I(a.c, F::bot()); }));
  out.push_back(law("truth", "Truth", G::Boundary, X::Valid, CP::One, FP::None, false,
                    [](const LawArgs& a) { return F::neg(I(a.c, F::top())); }));

  out.push_back(law("axiom-T", "(T)", G::Axiom, X::Valid, CP::One, FP::None, false,
                    [](const LawArgs& a) { return E(a.c, F::top()); }));
  out.push_back(law("axiom-M", "(M)", G::Axiom, X::Valid, CP::One, FP::None, false,
                    [](const LawArgs& a) { return F::neg(E(a.c, F::bot())); }));
  out.push_back(law("axiom-S", "(S)", G::Axiom, X::Valid, CP::DisjointPair, FP::Two, false,
                    [](const LawArgs& a) {
                      return F::implies(F::conj(E(a.c, a.phi), E(a.d, a.psi)),
                                        E(a.c.united(a.d), F::conj(a.phi, a.psi)));
                    }));
  out.push_back(law("axiom-G", "(G)", G::Axiom, X::Valid, CP::None, FP::One, true,
                    [](const LawArgs& a) {
                      return F::implies(F::neg(E(Coalition{}, F::neg(a.phi))), E(a.grand, a.phi));
                    }));
  out.push_back(law("iab-def", "(Iab-Def)", G::Axiom, X::Valid, CP::One, FP::One, false,
                    [](const LawArgs& a) { return F::iff(I(a.c, a.phi), F::neg(E(a.c, a.phi))); }));

  out.push_back(law("distribution", "Distribution", G::Extra, X::Invalid, CP::One, FP::Two, false,
                    [](const LawArgs& a) {
                      return F::implies(E(a.c, F::implies(a.phi, a.psi)),
                                        F::implies(E(a.c, a.phi), E(a.c, a.psi)));
                    }));
  out.push_back(law(
      "strategic-impotence", "Strategic impotence", G::Extra, X::Satisfiable, CP::One, FP::One,
      false, [](const LawArgs& a) { return F::conj(I(a.c, a.phi), I(a.c, F::neg(a.phi))); },
      Fixture{"matching_pennies", {1}, {}, "p", "", {{"I[1] p", true}, {"I[1] !p", true}}}));
  return out;
}

std::vector<std::pair<Coalition, Coalition>> coalition_args(CoalitionParams kind, int n) {
  std::vector<std::pair<Coalition, Coalition>> out;
  const std::uint32_t limit = 1u << n;
  if (kind == CoalitionParams::None) {
    out.emplace_back();
    return out;
  }
  for (std::uint32_t c = 0; c < limit; ++c) {
    if (kind == CoalitionParams::One) {
      out.emplace_back(Coalition::from_mask(c), Coalition{});
      continue;
    }
    for (std::uint32_t d = 0; d < limit; ++d) {
      bool keep = true;
      switch (kind) {
        case CoalitionParams::SubsetPair: keep = (c & ~d) == 0; break;
        case CoalitionParams::ProperSubsetPair: keep = (c & ~d) == 0 && c != d; break;
        case CoalitionParams::DisjointPair: keep = (c & d) == 0; break;
        default: break;
      }
      if (keep) out.emplace_back(Coalition::from_mask(c), Coalition::from_mask(d));
    }
  }
  return out;
}

std::vector<std::pair<Formula, Formula>> formula_args(FormulaParams kind,
                                                      const std::vector<std::string>& atoms) {
  std::vector<std::pair<Formula, Formula>> out;
  const auto pool = formula_pool(atoms);
  switch (kind) {
    case FormulaParams::None:
      out.emplace_back(F::top(), F::top());
      break;
    case FormulaParams::One:
      for (const auto& f : pool) out.emplace_back(f, F::top());
      break;
    case FormulaParams::Two:
      for (const auto& f : pool)
        for (const auto& g : pool) out.emplace_back(f, g);
      break;
    case FormulaParams::Entailment:
      for (const auto& f : pool) {
        for (const auto& g : pool) {
          out.emplace_back(F::conj(f, g), f);
          out.emplace_back(f, F::disj(f, g));
        }
      }
      break;
  }
  return out;
}

std::string expand(std::string text, const Coalition& c, const Coalition& d,
                   const Coalition& complement, const Coalition& grand) {
  const std::pair<const char*, std::string> subs[] = {
      {"{Cbar}", complement.to_string()},
      {"{C}", c.to_string()},
      {"{D}", d.to_string()},
      {"{N}", grand.to_string()},
  };
  for (const auto& [key, value] : subs) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos)) {
      text.replace(pos, std::string(key).size(), value);
      pos += value.size();
    }
  }
  return text;
}

void replay_on(const Law& law, const Fixture& fx, const FixtureModel& named,
               FixtureReplay& out) {
  const CoalitionModel m = parse_model(named.text);
  const int n = m.agent_count();
  const Coalition grand = Coalition::grand(n);
  LawArgs args{fx.c, fx.d, complement(m, fx.c), grand,
               fx.phi.empty() ? F::top() : parse_formula(fx.phi),
               fx.psi.empty() ? F::top() : parse_formula(fx.psi)};
  const Formula instance = law.scheme(args);
  const bool want = law.expected == Expectation::Satisfiable;
  const bool got = satisfies(m, m.initial(), instance);
  out.claims.push_back({named.name, print_formula(instance), want, got});
  out.passed = out.passed && want == got;
  for (const auto& claim : fx.claims) {
    const std::string text = expand(claim.formula, args.c, args.d, args.complement, grand);
    const bool v = satisfies(m, m.initial(), parse_formula(text));
    out.claims.push_back({named.name, text, claim.expected, v});
    out.passed = out.passed && v == claim.expected;
  }
}

struct Spaces {
  const ModelSpace* all;
  std::map<int, ModelSpace> exact;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LawResult run_in(const Law& law, const Bounds& b, Spaces& spaces) {
  const auto t0 = Clock::now();
  LawResult r;
  r.id = law.id;
  r.expected = law.expected;
  r.found = false;
  const bool negate = law.expected == Expectation::Satisfiable;
  const bool stop_early = law.expected != Expectation::Valid;

  std::vector<std::pair<int, Formula>> work;
  if (law.closed_universe) {
    for (int n = b.min_agents; n <= b.max_agents; ++n) {
      for (auto& f : instantiations(law, n, b.props)) work.emplace_back(n, std::move(f));
    }
  } else {
    for (auto& f : instantiations(law, b.max_agents, b.props)) work.emplace_back(0, std::move(f));
  }

  for (const auto& [n, f] : work) {
    const Formula target = negate ? F::neg(f) : f;
    const ModelSpace* space = spaces.all;
    if (n != 0) {
      auto it = spaces.exact.find(n);
      if (it == spaces.exact.end()) {
        Bounds exact = b;
        exact.min_agents = exact.max_agents = n;
        it = spaces.exact.emplace(n, ModelSpace(exact)).first;
      }
      space = &it->second;
    }
    ++r.instantiations;
    Verdict v = find_countermodel(target, *space);
    if (auto* cx = std::get_if<Counterexample>(&v)) {
      r.models_checked += cx->models_checked;
      r.found = true;
      r.seconds_to_hit = since(t0);
      r.hit_formula = f;
      r.hit = std::move(*cx);
      if (stop_early) break;
    } else {
      r.models_checked += std::get<NoCounterexampleWithinBounds>(v).models_checked;
    }
  }

  if (law.fixture) {
    r.replay = replay_fixture(law);
    r.fixture = r.replay->passed ? FixtureStatus::Passed : FixtureStatus::Failed;
  }
  const bool fixture_ok = r.fixture != FixtureStatus::Failed;
  r.passed = law.expected == Expectation::Valid ? !r.found : r.found && fixture_ok;
  r.seconds = since(t0);
  return r;
}

}  // namespace

const std::vector<Law>& catalog() {
  static const std::vector<Law> laws = build_catalog();
  return laws;
}

const Law* find_law(std::string_view id) {
  for (const auto& l : catalog()) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

CoalitionModel load_fixture_model(std::string_view name) {
  for (const auto& fm : fixture_models()) {
    if (fm.name == name) return parse_model(fm.text);
  }
  throw FixtureMissing("no fixture model named '" + std::string(name) + "'");
}

std::vector<Formula> formula_pool(const std::vector<std::string>& atoms) {
  std::vector<Formula> pool;
  for (const auto& a : atoms) pool.push_back(F::atom(a));
  for (const auto& a : atoms) pool.push_back(F::neg(F::atom(a)));
  pool.push_back(F::top());
  pool.push_back(F::bot());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      pool.push_back(F::conj(F::atom(atoms[i]), F::atom(atoms[j])));
      pool.push_back(F::disj(F::atom(atoms[i]), F::atom(atoms[j])));
    }
  }
  return pool;
}

std::vector<Formula> instantiations(const Law& law, int agents,
                                    const std::vector<std::string>& atoms) {
  if (agents < 1) throw std::invalid_argument("instantiations need at least one agent");
  std::vector<Formula> out;
  const Coalition grand = Coalition::grand(agents);
  const auto fs = formula_args(law.formulas, atoms);
  for (const auto& [c, d] : coalition_args(law.coalitions, agents)) {
    const Coalition comp = Coalition::from_mask(grand.mask() & ~c.mask());
    for (const auto& [phi, psi] : fs) out.push_back(law.scheme(LawArgs{c, d, comp, grand, phi, psi}));
  }
  return out;
}

FixtureReplay replay_fixture(const Law& law) {
  if (!law.fixture) throw FixtureMissing("law '" + law.id + "' has no fixture");
  FixtureReplay out;
  out.passed = true;
  const Fixture& fx = *law.fixture;
  if (fx.model.empty()) {
    for (const auto& fm : fixture_models()) replay_on(law, fx, fm, out);
    return out;
  }
  for (const auto& fm : fixture_models()) {
    if (fm.name == fx.model) {
      replay_on(law, fx, fm, out);
      return out;
    }
  }
  throw FixtureMissing("no fixture model named '" + fx.model + "'");
}

LawResult run_law(const Law& law, const Bounds& b) {
  b.validate();
  const ModelSpace all(b);
  Spaces spaces{&all, {}};
  return run_in(law, b, spaces);
}

LawReport run_laws(const Bounds& b) {
  b.validate();
  LawReport report{b, {}};
  const ModelSpace all(b);
  Spaces spaces{&all, {}};
  for (const auto& l : catalog()) report.rows.push_back(run_in(l, b, spaces));
  return report;
}

bool LawReport::all_passed() const {
  for (const auto& r : rows) {
    if (!r.passed) return false;
  }
  return true;
}

const char* to_string(Expectation e) noexcept {
  switch (e) {
    case Expectation::Valid: return "valid";
    case Expectation::Invalid: return "invalid";
    case Expectation::Satisfiable: return "satisfiable";
  }
  return "?";
}

namespace {

std::string mark(Expectation e) {
  switch (e) {
    case Expectation::Valid: return "✓";
    case Expectation::Invalid: return "✗";
    case Expectation::Satisfiable: return "sat";
  }
  return "?";
}

std::string observed(const LawResult& r) {
  if (r.expected == Expectation::Satisfiable) return r.found ? "sat" : "unsat";
  return r.found ? "✗" : "✓";
}

// Display width, counting each UTF-8 sequence as one column.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
  return w;
}

}  // namespace

std::string render_report(const LawReport& report) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"law", "expected", "observed", "instantiations", "models_checked", "result"});
  for (const auto& r : report.rows) {
    cells.push_back({r.id, mark(r.expected), observed(r), std::to_string(r.instantiations),
                     std::to_string(r.models_checked), r.passed ? "PASS" : "FAIL"});
  }
  std::vector<std::size_t> widths(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i];
      if (i + 1 < row.size()) os << std::string(widths[i] - width(row[i]) + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace clab
