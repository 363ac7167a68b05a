#pragma once

// Bounded validity by exhaustive enumeration. A search either returns the
// first falsifying (model, state) in ModelSpace order, or reports that the
// bounded space is exhausted. Exhaustion is never a validity proof.

#include <cstdint>
#include <optional>
#include <variant>

#include "clab/formula.hpp"
#include "clab/model.hpp"

namespace clab {

/// (states, largest action set, agents) of a model.
struct SizeTuple {
  std::size_t states;
  std::size_t actions;
  int agents;

  auto operator<=>(const SizeTuple&) const = default;
};

struct Counterexample {
  CoalitionModel model;
  StateIndex state;
  /// Position of `model` in the searched ModelSpace.
  std::uint64_t model_index;
  /// Models evaluated up to and including this one.
  std::uint64_t models_checked;
  /// Set by minimal_countermodel.
  std::optional<SizeTuple> size;
};

struct NoCounterexampleWithinBounds {
  Bounds bounds;
  std::uint64_t models_checked;
  std::uint64_t states_checked;
};

using Verdict = std::variant<Counterexample, NoCounterexampleWithinBounds>;

inline bool refuted(const Verdict& v) { return std::holds_alternative<Counterexample>(v); }

struct SearchOptions {
  /// Worker threads splitting the model range; the lowest falsifying index
  /// wins, so the verdict does not depend on this.
  unsigned workers = 1;
};

/// Throws BoundsInsufficientForFormula when `f` names more agents than
/// max_agents, needs varied outcomes everywhere (modal depth >= 2), or uses
/// an atom missing from bounds.props.
void require_bounds_cover(const Formula& f, const Bounds& b);

/// Scans models in order, evaluating `f` at every state. Models with fewer
/// agents than `f` names are outside the formula's domain and are skipped
/// (and not counted).
Verdict find_countermodel(const Formula& f, const Bounds& b, SearchOptions opts = {});
Verdict find_countermodel(const Formula& f, const ModelSpace& space, SearchOptions opts = {});

/// find_countermodel on f <-> g.
Verdict check_equivalence(const Formula& f, const Formula& g, const Bounds& b,
                          SearchOptions opts = {});

/// Searches exact size tuples in increasing (states, actions, agents) order
/// up to `b`; the first counterexample carries its size tuple. On
/// exhaustion the counts cover every tuple.
Verdict minimal_countermodel(const Formula& f, const Bounds& b);

}  // namespace clab
