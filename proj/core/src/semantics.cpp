#include "clab/semantics.hpp"

#include "clab/errors.hpp"

namespace clab {

namespace {

// Offsets, in complete-profile index space, of every joint action of
// `members` in lexicographic order.
void joint_offsets(const CoalitionModel& m, const std::vector<int>& members,
                   std::vector<std::size_t>& out) {
  out.assign(1, 0);
  for (int agent : members) {
    const std::size_t acts = m.actions(agent).size();
    const std::size_t stride = m.stride(agent);
    std::vector<std::size_t> next;
    next.reserve(out.size() * acts);
    for (std::size_t base : out) {
      for (std::size_t a = 0; a < acts; ++a) next.push_back(base + a * stride);
    }
    out = std::move(next);
  }
}

}  // namespace

Evaluator::Evaluator(const Formula& f) { flatten(f); }

std::size_t Evaluator::flatten(const Formula& f) {
  Op op{f.kind(), {}, {}, 0, 0};
  switch (f.kind()) {
    case FormulaKind::Atom:
      op.atom = f.name();
      break;
    case FormulaKind::Not:
      op.lhs = flatten(f.operand());
      break;
    case FormulaKind::Ability:
    case FormulaKind::Inability:
      op.coalition = f.coalition();
      op.lhs = flatten(f.operand());
      break;
    case FormulaKind::Top:
    case FormulaKind::Bot:
      break;
    default:
      op.lhs = flatten(f.left());
      op.rhs = flatten(f.right());
      break;
  }
  ops_.push_back(std::move(op));
  return ops_.size() - 1;
}

const std::vector<std::uint8_t>& Evaluator::evaluate(const CoalitionModel& m) {
  const std::size_t n = m.state_count();
  rows_.resize(ops_.size() * n);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    std::uint8_t* row = &rows_[i * n];
    const std::uint8_t* l = &rows_[op.lhs * n];
    const std::uint8_t* r = &rows_[op.rhs * n];
    switch (op.kind) {
      case FormulaKind::Atom: {
        const auto* ext = m.extension_of(op.atom);
        for (std::size_t s = 0; s < n; ++s) row[s] = ext != nullptr && (*ext)[s];
        break;
      }
      case FormulaKind::Top:
        for (std::size_t s = 0; s < n; ++s) row[s] = 1;
        break;
      case FormulaKind::Bot:
        for (std::size_t s = 0; s < n; ++s) row[s] = 0;
        break;
      case FormulaKind::Not:
        for (std::size_t s = 0; s < n; ++s) row[s] = !l[s];
        break;
      case FormulaKind::And:
        for (std::size_t s = 0; s < n; ++s) row[s] = l[s] && r[s];
        break;
      case FormulaKind::Or:
        for (std::size_t s = 0; s < n; ++s) row[s] = l[s] || r[s];
        break;
      case FormulaKind::Implies:
        for (std::size_t s = 0; s < n; ++s) row[s] = !l[s] || r[s];
        break;
      case FormulaKind::Iff:
        for (std::size_t s = 0; s < n; ++s) row[s] = l[s] == r[s];
        break;
      case FormulaKind::Ability:
      case FormulaKind::Inability: {
        require_in_range(m, op.coalition);
        std::vector<int> rest;
        for (int a = 1; a <= m.agent_count(); ++a) {
          if (!op.coalition.contains(a)) rest.push_back(a);
        }
        joint_offsets(m, op.coalition.members(), own_);
        joint_offsets(m, rest, other_);
        if (op.kind == FormulaKind::Ability) {
          // Some joint action of C reaches the goal under every completion.
          for (std::size_t s = 0; s < n; ++s) {
            bool value = false;
            for (std::size_t mine : own_) {
              bool all_reach = true;
              for (std::size_t theirs : other_) {
                if (!l[m.outcome(s, mine + theirs)]) {
                  all_reach = false;
                  break;
                }
              }
              if (all_reach) {
                value = true;
                break;
              }
            }
            row[s] = value;
          }
        } else {
          // Every joint action of C has some completion leaving the goal.
          for (std::size_t s = 0; s < n; ++s) {
            bool value = true;
            for (std::size_t mine : own_) {
              bool countered = false;
              for (std::size_t theirs : other_) {
                if (!l[m.outcome(s, mine + theirs)]) {
                  countered = true;
                  break;
                }
              }
              if (!countered) {
                value = false;
                break;
              }
            }
            row[s] = value;
          }
        }
        break;
      }
    }
  }
  result_.assign(rows_.end() - static_cast<std::ptrdiff_t>(n), rows_.end());
  return result_;
}

StateSet extension(const CoalitionModel& m, const Formula& f) {
  Evaluator ev(f);
  const auto& rows = ev.evaluate(m);
  return StateSet(rows.begin(), rows.end());
}

bool satisfies(const CoalitionModel& m, StateIndex state, const Formula& f) {
  if (state >= m.state_count()) throw std::out_of_range("state index out of range");
  return extension(m, f)[state];
}

AbilityResult check_ability(const CoalitionModel& m, StateIndex state, const Coalition& c,
                            const Formula& goal) {
  const StateSet good = extension(m, goal);
  const auto others = profiles(m, complement(m, c));
  for (const ActionProfile& mine : profiles(m, c)) {
    bool all_reach = true;
    for (const ActionProfile& theirs : others) {
      if (!good[apply(m, state, mine, theirs)]) {
        all_reach = false;
        break;
      }
    }
    if (all_reach) return {true, AbilityWitness{mine}};
  }
  return {false, std::nullopt};
}

InabilityResult check_inability(const CoalitionModel& m, StateIndex state, const Coalition& c,
                                const Formula& goal) {
  const StateSet good = extension(m, goal);
  const auto others = profiles(m, complement(m, c));
  InabilityWitness w;
  for (const ActionProfile& mine : profiles(m, c)) {
    const ActionProfile* counter = nullptr;
    for (const ActionProfile& theirs : others) {
      if (!good[apply(m, state, mine, theirs)]) {
        counter = &theirs;
        break;
      }
    }
    if (counter == nullptr) return {false, std::nullopt};
    w.counters.emplace_back(mine, *counter);
  }
  return {true, std::move(w)};
}

bool replay(const CoalitionModel& m, StateIndex state, const Coalition& c, const Formula& goal,
            const AbilityWitness& w) {
  if (w.action.coalition() != c) return false;
  for (const ActionProfile& theirs : profiles(m, complement(m, c))) {
    if (!satisfies(m, apply(m, state, w.action, theirs), goal)) return false;
  }
  return true;
}

bool replay(const CoalitionModel& m, StateIndex state, const Coalition& c, const Formula& goal,
            const InabilityWitness& w) {
  const auto mine = profiles(m, c);
  if (w.counters.size() != mine.size()) return false;
  const Coalition rest = complement(m, c);
  for (std::size_t k = 0; k < mine.size(); ++k) {
    const auto& [own, counter] = w.counters[k];
    if (own != mine[k] || counter.coalition() != rest) return false;
    if (satisfies(m, apply(m, state, own, counter), goal)) return false;
  }
  return true;
}

}  // namespace clab
