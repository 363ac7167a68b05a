#pragma once

// Finite one-step coalition models, their text format, and bounded
// exhaustive enumeration.
//
// Text format (line oriented, `#` starts a comment):
//
//   agents 2
//   state s
//   init s
//   actions 1 a b
//   prop p t
//   outcome s a a -> t
//   default s -> u
//
// An explicit `outcome` line beats the `default` of its source state; the
// outcome function must be total once defaults are applied.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clab/formula.hpp"

namespace clab {

using StateIndex = std::size_t;
using ActionIndex = std::size_t;

/// One action per member of a coalition. `choices()[k]` is the action of
/// `coalition().members()[k]`. The default-constructed profile is the unique
/// profile of the empty coalition.
class ActionProfile {
 public:
  ActionProfile() = default;
  ActionProfile(Coalition coalition, std::vector<ActionIndex> choices);

  const Coalition& coalition() const noexcept { return coalition_; }
  const std::vector<ActionIndex>& choices() const noexcept { return choices_; }
  std::optional<ActionIndex> choice_of(int agent) const;

  bool operator==(const ActionProfile&) const = default;

 private:
  Coalition coalition_;
  std::vector<ActionIndex> choices_;
};

class CoalitionModel {
 public:
  using Valuation = std::map<std::string, std::vector<bool>, std::less<>>;

  /// `actions[i]` lists the actions of agent i + 1. `outcome` is indexed by
  /// `state * profile_count() + full_profile_index`, see profile_index().
  /// `valuation` maps each proposition to a membership vector over states.
  /// Throws ModelError(Invalid) when any invariant fails.
  CoalitionModel(int agents, std::vector<std::string> states,
                 std::vector<std::vector<std::string>> actions, std::vector<StateIndex> outcome,
                 Valuation valuation, StateIndex initial);

  int agent_count() const noexcept { return agents_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::string& state_name(StateIndex s) const { return states_.at(s); }
  std::optional<StateIndex> find_state(std::string_view name) const;
  /// Throws UnknownStateName.
  StateIndex state_index(std::string_view name) const;

  /// Actions of a 1-based agent.
  const std::vector<std::string>& actions(int agent) const { return actions_.at(agent - 1); }

  /// Number of complete action profiles.
  std::size_t profile_count() const noexcept { return profile_count_; }
  /// Weight of an agent's action in a complete profile index; agent 1 is the
  /// most significant digit, so indices follow lexicographic profile order.
  std::size_t stride(int agent) const { return strides_.at(agent - 1); }

  StateIndex outcome(StateIndex s, std::size_t full_profile) const {
    return outcome_[s * profile_count_ + full_profile];
  }
  const std::vector<StateIndex>& outcome_table() const noexcept { return outcome_; }

  const Valuation& valuation() const noexcept { return valuation_; }
  /// Membership vector of `prop`, or nullptr when the model does not mention
  /// it (such atoms are false everywhere).
  const std::vector<bool>* extension_of(std::string_view prop) const;
  bool holds(std::string_view prop, StateIndex s) const;

  StateIndex initial() const noexcept { return initial_; }
  CoalitionModel with_initial(StateIndex s) const;

  bool operator==(const CoalitionModel&) const = default;

 private:
  int agents_;
  std::vector<std::string> states_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::size_t> strides_;
  std::size_t profile_count_;
  std::vector<StateIndex> outcome_;
  Valuation valuation_;
  StateIndex initial_;
};

/// Parses and validates the text format. Throws ModelError.
CoalitionModel parse_model(std::string_view text);

/// All outcomes explicit, no `default` lines.
std::string print_model(const CoalitionModel& m);

/// "1:a 2:b", or "{}" for the empty profile. `separator` goes between
/// members.
std::string format_profile(const CoalitionModel& m, const ActionProfile& p,
                           std::string_view separator = " ");

/// Throws CoalitionOutOfRange unless c is within {1..agent_count()}.
void require_in_range(const CoalitionModel& m, const Coalition& c);

/// {1..n} \ c.
Coalition complement(const CoalitionModel& m, const Coalition& c);

/// Every joint action of `c` in lexicographic order (first member varies
/// slowest). Exactly one (empty) profile for the empty coalition.
std::vector<ActionProfile> profiles(const CoalitionModel& m, const Coalition& c);

/// Complete profile index of the merge of two profiles whose coalitions
/// partition the agents. Throws ProfilesNotPartition.
std::size_t profile_index(const CoalitionModel& m, const ActionProfile& a,
                          const ActionProfile& b);

/// o(state, a, b). Throws ProfilesNotPartition.
StateIndex apply(const CoalitionModel& m, StateIndex state, const ActionProfile& a,
                 const ActionProfile& b);

/// Search-space limits for model enumeration.
struct Bounds {
  int min_agents = 1;
  int max_agents = 2;
  int max_states = 3;
  int max_actions_per_agent = 2;
  std::vector<std::string> props;
  /// When false, only the outcomes at the initial state vary and every other
  /// state loops to itself. Enough for formulas of modal depth <= 1.
  bool vary_all_states = false;

  /// Two agents, three states, two actions, atoms {p, q}.
  static Bounds defaults();
  /// Throws std::invalid_argument.
  void validate() const;

  bool operator==(const Bounds&) const = default;
};

struct ModelShape {
  int agents;
  std::size_t states;
  std::vector<std::size_t> actions;

  std::size_t max_actions() const;
  bool operator==(const ModelShape&) const = default;
};

/// The deterministic sequence of every model within some Bounds.
///
/// Order: agents ascending, then state count, then the per-agent action
/// counts lexicographically (agent 1 slowest); inside one shape, valuations
/// in binary order and then outcome functions in mixed-radix order. States
/// are named s1, s2, ..., actions a1, a2, ..., and s1 is initial.
///
/// Every model is addressable by index, so callers can split the space into
/// disjoint index ranges.
class ModelSpace {
 public:
  struct Block {
    ModelShape shape;
    std::uint64_t first;
    std::uint64_t count;
  };

  explicit ModelSpace(Bounds bounds);
  /// Keeps only the shapes accepted by `keep`.
  ModelSpace(Bounds bounds, const std::function<bool(const ModelShape&)>& keep);

  const Bounds& bounds() const noexcept { return bounds_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  CoalitionModel at(std::uint64_t index) const;

  /// Calls fn(index, model) for every index in [begin, end) until fn
  /// returns false. Uses the cache when the space was small enough to build
  /// eagerly.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<bool(std::uint64_t, const CoalitionModel&)>& fn) const;

  /// Number of models of one shape under `bounds`; throws
  /// std::overflow_error past 2^64.
  static std::uint64_t count_shape(const ModelShape& shape, std::size_t props,
                                   bool vary_all_states);

 private:
  CoalitionModel decode(const Block& block, std::uint64_t offset) const;
  const Block& block_of(std::uint64_t index) const;

  Bounds bounds_;
  std::vector<Block> blocks_;
  std::uint64_t size_ = 0;
  std::vector<CoalitionModel> cache_;
};

}  // namespace clab
