#pragma once

#include <cstdint>
#include <vector>

#include "clab/formula.hpp"
#include "clab/model.hpp"

namespace clab {

/// Rewrites every I[C] a into !E[C] a, recursively. All other nodes are
/// copied homomorphically, so the result prints like the input minus the
/// inability operator.
Formula translate(const Formula& f);

/// True iff `f` contains no Inability node.
bool is_cl_fragment(const Formula& f);

struct PreservationViolation {
  Formula formula;
  int agents;
  std::uint64_t model_index;
  StateIndex state;
};

struct PreservationReport {
  std::uint64_t formulas = 0;
  std::uint64_t models = 0;
  /// formula x (model, state) evaluations compared.
  std::uint64_t total_checks = 0;
  std::vector<PreservationViolation> violations;
};

/// Evaluates every enumerated formula and its translation on every model
/// within `bounds`, at every state. For each agent count n in
/// [min_agents, max_agents] the formulas range over coalitions of {1..n} and
/// the models have exactly n agents.
///
/// Throws BoundsInsufficientForFormula when max_depth >= 2 without
/// vary_all_states, BoundsTooSmall when no model is enumerated.
PreservationReport check_truth_preservation(const Bounds& bounds, std::size_t max_depth);

}  // namespace clab
