#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "clab/formula.hpp"
#include "clab/model.hpp"

namespace clab {

/// Membership vector over a model's states.
using StateSet = std::vector<bool>;

/// A joint action of C that lands in a goal state whatever the other agents
/// do.
struct AbilityWitness {
  ActionProfile action;
};

/// For every joint action of C, in profiles() order, a joint action of the
/// complement whose outcome falsifies the goal. The counter may differ per
/// joint action of C.
struct InabilityWitness {
  std::vector<std::pair<ActionProfile, ActionProfile>> counters;
};

struct AbilityResult {
  bool holds = false;
  std::optional<AbilityWitness> witness;
};

struct InabilityResult {
  bool holds = false;
  std::optional<InabilityWitness> witness;
};

/// Bottom-up evaluator for one formula, reusable across models.
///
/// The formula is flattened once; evaluating it on a model fills one row per
/// subformula, so nested modalities read memoized truth values instead of
/// recursing. Each E[C]/I[C] node costs O(|S| * |profiles|).
///
/// Holds scratch buffers: one instance per thread.
class Evaluator {
 public:
  explicit Evaluator(const Formula& f);

  /// Truth value at every state (1 = true). The reference stays valid until
  /// the next call. Throws CoalitionOutOfRange.
  const std::vector<std::uint8_t>& evaluate(const CoalitionModel& m);

 private:
  struct Op {
    FormulaKind kind;
    std::string atom;
    Coalition coalition;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
  };

  std::size_t flatten(const Formula& f);

  std::vector<Op> ops_;
  std::vector<std::uint8_t> rows_;
  std::vector<std::uint8_t> result_;
  std::vector<std::size_t> own_;
  std::vector<std::size_t> other_;
};

/// Atoms the model does not mention are false everywhere.
StateSet extension(const CoalitionModel& m, const Formula& f);

bool satisfies(const CoalitionModel& m, StateIndex state, const Formula& f);

/// Whether E[c] goal holds at `state`; the witness is the first joint action
/// of c in profiles() order that works.
AbilityResult check_ability(const CoalitionModel& m, StateIndex state, const Coalition& c,
                            const Formula& goal);

/// Whether I[c] goal holds at `state`; each counter is the first countering
/// joint action of the complement in profiles() order.
InabilityResult check_inability(const CoalitionModel& m, StateIndex state, const Coalition& c,
                                const Formula& goal);

/// Re-plays a witness against every response of the complement.
bool replay(const CoalitionModel& m, StateIndex state, const Coalition& c, const Formula& goal,
            const AbilityWitness& w);

/// Checks that the witness covers every joint action of c exactly once and
/// that each counter reaches a state falsifying the goal.
bool replay(const CoalitionModel& m, StateIndex state, const Coalition& c, const Formula& goal,
            const InabilityWitness& w);

}  // namespace clab
