#pragma once

// Abstract syntax of coalition logic with an explicit inability modality.
//
// Formulas are immutable trees with shared subterms; copying a Formula is a
// reference-count bump. Or/Implies/Iff/Top/Bot are kept as first-class nodes
// so that printing reproduces the parsed text up to whitespace.
//
// Concrete syntax (loosest to tightest):
//
//   a <-> b      left-associative
//   a -> b       right-associative
//   a | b
//   a & b
//   !a  E[C] a  I[C] a
//
// Coalitions are written as bracketed, comma-separated 1-based agent
// indices: `E[1,2] p`, `I[] q`.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clab {

/// A set of agents, stored as sorted 1-based indices without duplicates.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::initializer_list<int> members);

  /// Sorts `members`; throws std::invalid_argument on a duplicate or a
  /// non-positive index.
  static Coalition from_members(std::vector<int> members);
  /// Bit i of `mask` selects agent i + 1.
  static Coalition from_mask(std::uint32_t mask);
  /// {1..n}
  static Coalition grand(int n);

  const std::vector<int>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(int agent) const noexcept;
  /// Largest member, 0 for the empty coalition.
  int max_agent() const noexcept { return members_.empty() ? 0 : members_.back(); }

  bool subset_of(const Coalition& other) const noexcept;
  bool disjoint_with(const Coalition& other) const noexcept;
  Coalition united(const Coalition& other) const;

  /// Requires max_agent() <= 32.
  std::uint32_t mask() const;

  /// "[1,2]", "[]"
  std::string to_string() const;

  auto operator<=>(const Coalition&) const = default;

 private:
  std::vector<int> members_;
};

enum class FormulaKind : std::uint8_t {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Ability,
  Inability,
};

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula operand);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula ability(Coalition coalition, Formula body);
  static Formula inability(Coalition coalition, Formula body);

  FormulaKind kind() const noexcept;

  /// Atom name; empty for every other kind.
  const std::string& name() const noexcept;
  /// Coalition of an Ability/Inability node; empty otherwise.
  const Coalition& coalition() const noexcept;
  /// Operand of Not, body of a modality. Precondition: unary node.
  Formula operand() const;
  /// Precondition: binary node.
  Formula left() const;
  Formula right() const;

  bool is_unary() const noexcept;
  bool is_binary() const noexcept;
  bool is_modal() const noexcept;

  /// Structural equality.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::string name, Coalition coalition,
                      std::shared_ptr<const Node> lhs, std::shared_ptr<const Node> rhs);

  std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax. Throws FormulaSyntaxError (byte offset plus
/// expected tokens) or DuplicateAgentInCoalition.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis concrete syntax; parse_formula inverts it exactly.
std::string print_formula(const Formula& f);

/// Constructor-style dump, e.g. `Ability({1,2}, Atom(p))`.
std::string dump_ast(const Formula& f);

std::size_t modal_depth(const Formula& f);
std::set<std::string> propositions_of(const Formula& f);
std::size_t node_count(const Formula& f);
/// Largest agent index named by any coalition in `f`, 0 if none.
int max_agent_of(const Formula& f);

/// Deterministic, duplicate-free stream of every formula of syntactic depth
/// <= max_depth built from the atoms, true/false, !, &, and E[C]/I[C] for
/// all C within {1..agents}.
///
/// Order: by depth; within a depth by constructor (Not, And, Ability,
/// Inability); And pairs lexicographically by the stream positions of their
/// children; modalities by coalition bitmask, then child position. Depth 0 is
/// the atoms in the given order, then true, then false.
class FormulaEnumerator {
 public:
  FormulaEnumerator(std::vector<std::string> props, int agents, std::size_t max_depth);

  std::optional<Formula> next();

 private:
  enum class Phase { Base, Not, And, Ability, Inability, Done };

  void finish_level();
  void emit(const Formula& f, std::optional<Formula>& out);

  std::vector<Formula> base_;
  std::uint32_t coalition_count_;
  std::size_t max_depth_;

  // Every formula of depth < level_, in stream order; level_starts_[k] is the
  // offset of depth k.
  std::vector<Formula> seen_;
  std::vector<std::size_t> level_starts_;

  std::size_t level_ = 0;
  Phase phase_ = Phase::Base;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
  std::uint32_t mask_ = 0;
};

/// Drains a FormulaEnumerator.
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& props, int agents,
                                        std::size_t max_depth);

}  // namespace clab
