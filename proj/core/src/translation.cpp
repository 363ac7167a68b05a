#include "clab/translation.hpp"

#include "clab/errors.hpp"
#include "clab/semantics.hpp"

namespace clab {

Formula translate(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Not:
      return Formula::neg(translate(f.operand()));
    case FormulaKind::And:
      return Formula::conj(translate(f.left()), translate(f.right()));
    case FormulaKind::Or:
      return Formula::disj(translate(f.left()), translate(f.right()));
    case FormulaKind::Implies:
      return Formula::implies(translate(f.left()), translate(f.right()));
    case FormulaKind::Iff:
      return Formula::iff(translate(f.left()), translate(f.right()));
    case FormulaKind::Ability:
      return Formula::ability(f.coalition(), translate(f.operand()));
    case FormulaKind::Inability:
      return Formula::neg(Formula::ability(f.coalition(), translate(f.operand())));
  }
  return f;
}

bool is_cl_fragment(const Formula& f) {
  if (f.kind() == FormulaKind::Inability) return false;
  if (f.is_unary()) return is_cl_fragment(f.operand());
  if (f.is_binary()) return is_cl_fragment(f.left()) && is_cl_fragment(f.right());
  return true;
}

PreservationReport check_truth_preservation(const Bounds& bounds, std::size_t max_depth) {
  bounds.validate();
  if (max_depth >= 2 && !bounds.vary_all_states) {
    throw BoundsInsufficientForFormula(
        "formulas of modal depth >= 2 need outcomes varied at every state");
  }
  PreservationReport report;
  for (int n = bounds.min_agents; n <= bounds.max_agents; ++n) {
    Bounds exact = bounds;
    exact.min_agents = exact.max_agents = n;
    const ModelSpace space(exact);
    std::uint64_t states = 0;
    space.for_each(0, space.size(), [&](std::uint64_t, const CoalitionModel& m) {
      states += m.state_count();
      return true;
    });
    report.models += space.size();

    FormulaEnumerator formulas(bounds.props, n, max_depth);
    while (auto f = formulas.next()) {
      ++report.formulas;
      Evaluator original(*f);
      Evaluator translated(translate(*f));
      space.for_each(0, space.size(), [&](std::uint64_t index, const CoalitionModel& m) {
        const auto& a = original.evaluate(m);
        const auto& b = translated.evaluate(m);
        for (StateIndex s = 0; s < a.size(); ++s) {
          if (a[s] != b[s]) report.violations.push_back({*f, n, index, s});
        }
        return true;
      });
      report.total_checks += states;
    }
  }
  if (report.models == 0) throw BoundsTooSmall("bounds enumerate no models");
  return report;
}

}  // namespace clab
