#pragma once

// Executable catalog of the structural laws of inability, the coalition
// logic axioms, and the countermodel fixtures that refute the invalid laws.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clab/formula.hpp"
#include "clab/model.hpp"
#include "clab/validity.hpp"

namespace clab {

enum class Expectation { Valid, Invalid, Satisfiable };

enum class LawGroup { Coalition, Goal, Boolean, Strategic, Boundary, Axiom, Extra };

/// Which coalition parameters a scheme takes and the side condition on them.
enum class CoalitionParams { None, One, SubsetPair, ProperSubsetPair, AnyPair, DisjointPair };

/// Formula parameters. `Entailment` draws (phi, psi) with phi |= psi from
/// the syntactic pairs (a & b, a) and (a, a | b).
enum class FormulaParams { None, One, Two, Entailment };

/// Arguments of one instantiation. `complement` and `grand` are relative to
/// the agent count the law is instantiated for.
struct LawArgs {
  Coalition c;
  Coalition d;
  Coalition complement;
  Coalition grand;
  Formula phi = Formula::top();
  Formula psi = Formula::top();
};

/// One atomic fact a fixture must reproduce at its initial state. In the
/// text, `{C}`, `{D}`, `{Cbar}` and `{N}` expand to coalition brackets.
struct FixtureClaim {
  std::string formula;
  bool expected;
};

struct Fixture {
  /// Name of an embedded model (see fixture_models()); empty means the
  /// claims hold on every embedded model with C = {1}.
  std::string model;
  Coalition c;
  Coalition d;
  std::string phi;
  std::string psi;
  std::vector<FixtureClaim> claims;
};

struct Law {
  std::string id;
  std::string principle;
  LawGroup group;
  Expectation expected;
  CoalitionParams coalitions;
  FormulaParams formulas;
  /// The scheme mentions the complement or the grand coalition, so each
  /// instantiation is tied to an exact agent count.
  bool closed_universe;
  std::function<Formula(const LawArgs&)> scheme;
  std::optional<Fixture> fixture;
};

struct FixtureModel {
  std::string name;
  /// Byte-exact contents of fixtures/<name>.clm.
  std::string_view text;
};

/// The seven countermodels, in a fixed order.
const std::vector<FixtureModel>& fixture_models();
/// Throws FixtureMissing for an unknown name.
CoalitionModel load_fixture_model(std::string_view name);

/// Every table row, then the axioms, then the extra entries.
const std::vector<Law>& catalog();
/// nullptr when the id is unknown.
const Law* find_law(std::string_view id);

/// Formula parameter pool: atoms, their negations, true, false, and a & b,
/// a | b for each pair of distinct atoms.
std::vector<Formula> formula_pool(const std::vector<std::string>& atoms);

/// All instantiations over coalitions of {1..agents} satisfying the side
/// condition, in a fixed order (coalitions by bitmask, then formulas by pool
/// position).
std::vector<Formula> instantiations(const Law& law, int agents,
                                    const std::vector<std::string>& atoms);

struct ClaimResult {
  std::string model;
  std::string formula;
  bool expected;
  bool observed;
};

struct FixtureReplay {
  bool passed = false;
  /// The instantiated scheme first, then every recorded claim.
  std::vector<ClaimResult> claims;
};

/// Evaluates the fixture at its initial state: the instantiated scheme must
/// be false (true for a satisfiability entry) and every claim must match.
/// Throws FixtureMissing when the law has no fixture.
FixtureReplay replay_fixture(const Law& law);

enum class FixtureStatus { None, Passed, Failed };

struct LawResult {
  std::string id;
  Expectation expected;
  /// Whether a counterexample (or, for satisfiability, a model) was found.
  bool found;
  std::size_t instantiations = 0;
  std::uint64_t models_checked = 0;
  FixtureStatus fixture = FixtureStatus::None;
  std::optional<FixtureReplay> replay;
  bool passed = false;
  double seconds = 0;
  /// Time until the first counterexample, when one was found.
  std::optional<double> seconds_to_hit;
  /// The instance refuted (or satisfied) first, with its witness.
  std::optional<Formula> hit_formula;
  std::optional<Counterexample> hit;
};

struct LawReport {
  Bounds bounds;
  std::vector<LawResult> rows;

  bool all_passed() const;
};

/// Instantiates a law over coalitions of {1..b.max_agents} and atoms
/// b.props and searches each instance. A valid law passes when every
/// instance exhausts the bounds; an invalid law when some instance is
/// refuted and its fixture replays; a satisfiability entry when some
/// instance has a model. The search stops at the first refutation.
LawResult run_law(const Law& law, const Bounds& b);

/// run_law over the whole catalog.
LawReport run_laws(const Bounds& b);

/// Plain-text table, one row per law, columns: law, expected, observed,
/// instantiations, models_checked, result.
std::string render_report(const LawReport& report);

const char* to_string(Expectation e) noexcept;

}  // namespace clab
