#include "clab/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

// ---------------------------------------------------------------------------
// Coalition

Coalition::Coalition(std::initializer_list<int> members)
    : Coalition(from_members(std::vector<int>(members))) {}

Coalition Coalition::from_members(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] <= 0) throw std::invalid_argument("agent indices are 1-based");
    if (i > 0 && members[i] == members[i - 1]) {
      throw std::invalid_argument("duplicate agent " + std::to_string(members[i]));
    }
  }
  Coalition c;
  c.members_ = std::move(members);
  return c;
}

Coalition Coalition::from_mask(std::uint32_t mask) {
  Coalition c;
  for (int bit = 0; bit < 32; ++bit) {
    if (mask & (std::uint32_t{1} << bit)) c.members_.push_back(bit + 1);
  }
  return c;
}

Coalition Coalition::grand(int n) {
  Coalition c;
  for (int i = 1; i <= n; ++i) c.members_.push_back(i);
  return c;
}

bool Coalition::contains(int agent) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), agent);
}

bool Coalition::subset_of(const Coalition& other) const noexcept {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool Coalition::disjoint_with(const Coalition& other) const noexcept {
  return std::none_of(members_.begin(), members_.end(),
                      [&](int a) { return other.contains(a); });
}

Coalition Coalition::united(const Coalition& other) const {
  Coalition c;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(c.members_));
  return c;
}

std::uint32_t Coalition::mask() const {
  std::uint32_t m = 0;
  for (int a : members_) {
    if (a > 32) throw std::out_of_range("coalition mask supports agents 1..32");
    m |= std::uint32_t{1} << (a - 1);
  }
  return m;
}

std::string Coalition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(members_[i]);
  }
  out += ']';
  return out;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  Coalition coalition;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Formula Formula::make(FormulaKind kind, std::string name, Coalition coalition,
                      std::shared_ptr<const Node> lhs, std::shared_ptr<const Node> rhs) {
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(coalition), std::move(lhs), std::move(rhs)}));
}

Formula Formula::atom(std::string name) {
  return make(FormulaKind::Atom, std::move(name), {}, nullptr, nullptr);
}

Formula Formula::top() {
  static const Formula t = make(FormulaKind::Top, {}, {}, nullptr, nullptr);
  return t;
}

Formula Formula::bot() {
  static const Formula b = make(FormulaKind::Bot, {}, {}, nullptr, nullptr);
  return b;
}

Formula Formula::neg(Formula operand) {
  return make(FormulaKind::Not, {}, {}, std::move(operand.node_), nullptr);
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return make(FormulaKind::And, {}, {}, std::move(lhs.node_), std::move(rhs.node_));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return make(FormulaKind::Or, {}, {}, std::move(lhs.node_), std::move(rhs.node_));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make(FormulaKind::Implies, {}, {}, std::move(lhs.node_), std::move(rhs.node_));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return make(FormulaKind::Iff, {}, {}, std::move(lhs.node_), std::move(rhs.node_));
}

Formula Formula::ability(Coalition coalition, Formula body) {
  return make(FormulaKind::Ability, {}, std::move(coalition), std::move(body.node_), nullptr);
}

Formula Formula::inability(Coalition coalition, Formula body) {
  return make(FormulaKind::Inability, {}, std::move(coalition), std::move(body.node_), nullptr);
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }
const Coalition& Formula::coalition() const noexcept { return node_->coalition; }

Formula Formula::operand() const {
  assert(is_unary());
  return Formula(node_->lhs);
}

Formula Formula::left() const {
  assert(is_binary());
  return Formula(node_->lhs);
}

Formula Formula::right() const {
  assert(is_binary());
  return Formula(node_->rhs);
}

bool Formula::is_unary() const noexcept {
  return node_->kind == FormulaKind::Not || is_modal();
}

bool Formula::is_binary() const noexcept {
  switch (node_->kind) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::is_modal() const noexcept {
  return node_->kind == FormulaKind::Ability || node_->kind == FormulaKind::Inability;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.coalition != y.coalition) return false;
  if (static_cast<bool>(x.lhs) != static_cast<bool>(y.lhs)) return false;
  if (x.lhs && !(Formula(x.lhs) == Formula(y.lhs))) return false;
  if (static_cast<bool>(x.rhs) != static_cast<bool>(y.rhs)) return false;
  return !x.rhs || Formula(x.rhs) == Formula(y.rhs);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  Iff,
  Implies,
  Or,
  And,
  Not,
  Ability,
  Inability,
  LBracket,
  RBracket,
  Comma,
  Int,
  LParen,
  RParen,
  True,
  False,
  Ident,
  End,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Iff: return "'<->'";
    case Tok::Implies: return "'->'";
    case Tok::Or: return "'|'";
    case Tok::And: return "'&'";
    case Tok::Not: return "'!'";
    case Tok::Ability: return "'E'";
    case Tok::Inability: return "'I'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Int: return "agent index";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Ident: return "proposition";
    case Tok::End: return "end of input";
  }
  return "token";
}

constexpr int kMaxAgentIndex = 1'000'000;

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok t) {
      out.push_back({t, start, std::string(1, c)});
      ++i;
    };
    switch (c) {
      case '|': single(Tok::Or); continue;
      case '&': single(Tok::And); continue;
      case '!': single(Tok::Not); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case ',': single(Tok::Comma); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case 'E': single(Tok::Ability); continue;
      case 'I': single(Tok::Inability); continue;
      default: break;
    }
    if (text.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, start, "<->"});
      i += 3;
      continue;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, start, "->"});
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Int, start, std::string(text.substr(start, i - start))});
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
      out.push_back({kind, start, std::move(word)});
      continue;
    }
    throw FormulaSyntaxError(start, {}, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, text.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      fail({Tok::Iff, Tok::Implies, Tok::Or, Tok::And, Tok::End}, "unexpected token");
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::initializer_list<Tok> expected, const std::string& detail) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(describe(t));
    const Token& t = peek();
    std::string what = t.kind == Tok::End ? "unexpected end of input" : detail + " '" + t.text + "'";
    throw FormulaSyntaxError(t.offset, std::move(names), what);
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Implies)) return Formula::implies(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        advance();
        return Formula::neg(parse_unary());
      case Tok::Ability: {
        advance();
        Coalition c = parse_coalition();
        return Formula::ability(std::move(c), parse_unary());
      }
      case Tok::Inability: {
        advance();
        Coalition c = parse_coalition();
        return Formula::inability(std::move(c), parse_unary());
      }
      default:
        return parse_atom();
    }
  }

  Coalition parse_coalition() {
    if (!accept(Tok::LBracket)) fail({Tok::LBracket}, "unexpected token");
    std::vector<int> members;
    if (accept(Tok::RBracket)) return Coalition();
    while (true) {
      if (peek().kind != Tok::Int) fail({Tok::Int}, "unexpected token");
      const Token& t = advance();
      if (t.text.size() > 7 || std::stoi(t.text) > kMaxAgentIndex) {
        throw FormulaSyntaxError(t.offset, {}, "agent index too large '" + t.text + "'");
      }
      const int agent = std::stoi(t.text);
      if (agent == 0) throw FormulaSyntaxError(t.offset, {}, "agent indices are 1-based");
      if (std::find(members.begin(), members.end(), agent) != members.end()) {
        throw DuplicateAgentInCoalition(agent, t.offset);
      }
      members.push_back(agent);
      if (accept(Tok::RBracket)) break;
      if (!accept(Tok::Comma)) fail({Tok::Comma, Tok::RBracket}, "unexpected token");
    }
    return Coalition::from_members(std::move(members));
  }

  Formula parse_atom() {
    switch (peek().kind) {
      case Tok::True:
        advance();
        return Formula::top();
      case Tok::False:
        advance();
        return Formula::bot();
      case Tok::Ident:
        return Formula::atom(advance().text);
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        if (!accept(Tok::RParen)) {
          fail({Tok::RParen, Tok::Iff, Tok::Implies, Tok::Or, Tok::And}, "unexpected token");
        }
        return f;
      }
      default:
        fail({Tok::Not, Tok::Ability, Tok::Inability, Tok::True, Tok::False, Tok::Ident,
              Tok::LParen},
             "unexpected token");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength; larger binds tighter.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not:
    case FormulaKind::Ability:
    case FormulaKind::Inability: return 5;
    default: return 6;
  }
}

const char* binary_symbol(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return " <-> ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Or: return " | ";
    case FormulaKind::And: return " & ";
    default: return "?";
  }
}

void print_into(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(f, out);
  if (parens) out += ')';
}

void print_into(const Formula& f, std::string& out) {
  const FormulaKind k = f.kind();
  switch (k) {
    case FormulaKind::Atom:
      out += f.name();
      return;
    case FormulaKind::Top:
      out += "true";
      return;
    case FormulaKind::Bot:
      out += "false";
      return;
    case FormulaKind::Not:
      out += '!';
      print_wrapped(f.operand(), precedence(f.operand().kind()) < 5, out);
      return;
    case FormulaKind::Ability:
    case FormulaKind::Inability:
      out += k == FormulaKind::Ability ? 'E' : 'I';
      out += f.coalition().to_string();
      out += ' ';
      print_wrapped(f.operand(), precedence(f.operand().kind()) < 5, out);
      return;
    default: {
      const int p = precedence(k);
      const int lp = precedence(f.left().kind());
      const int rp = precedence(f.right().kind());
      // Implication associates to the right, the other connectives to the left.
      const bool right_assoc = k == FormulaKind::Implies;
      print_wrapped(f.left(), right_assoc ? lp <= p : lp < p, out);
      out += binary_symbol(k);
      print_wrapped(f.right(), right_assoc ? rp < p : rp <= p, out);
      return;
    }
  }
}

void dump_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += "Atom(" + f.name() + ")";
      return;
    case FormulaKind::Top:
      out += "Top";
      return;
    case FormulaKind::Bot:
      out += "Bot";
      return;
    case FormulaKind::Not:
      out += "Not(";
      dump_into(f.operand(), out);
      out += ')';
      return;
    case FormulaKind::Ability:
    case FormulaKind::Inability: {
      out += f.kind() == FormulaKind::Ability ? "Ability({" : "Inability({";
      const auto& m = f.coalition().members();
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(m[i]);
      }
      out += "}, ";
      dump_into(f.operand(), out);
      out += ')';
      return;
    }
    default: {
      static const char* names[] = {"", "", "", "", "And", "Or", "Implies", "Iff"};
      out += names[static_cast<int>(f.kind())];
      out += '(';
      dump_into(f.left(), out);
      out += ", ";
      dump_into(f.right(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::string dump_ast(const Formula& f) {
  std::string out;
  dump_into(f, out);
  return out;
}

std::size_t modal_depth(const Formula& f) {
  if (f.is_modal()) return 1 + modal_depth(f.operand());
  if (f.is_unary()) return modal_depth(f.operand());
  if (f.is_binary()) return std::max(modal_depth(f.left()), modal_depth(f.right()));
  return 0;
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == FormulaKind::Atom) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    collect_props(f.operand(), out);
  } else if (f.is_binary()) {
    collect_props(f.left(), out);
    collect_props(f.right(), out);
  }
}

}  // namespace

std::set<std::string> propositions_of(const Formula& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

std::size_t node_count(const Formula& f) {
  if (f.is_unary()) return 1 + node_count(f.operand());
  if (f.is_binary()) return 1 + node_count(f.left()) + node_count(f.right());
  return 1;
}

int max_agent_of(const Formula& f) {
  if (f.is_modal()) return std::max(f.coalition().max_agent(), max_agent_of(f.operand()));
  if (f.is_unary()) return max_agent_of(f.operand());
  if (f.is_binary()) return std::max(max_agent_of(f.left()), max_agent_of(f.right()));
  return 0;
}

// ---------------------------------------------------------------------------
// Enumeration

FormulaEnumerator::FormulaEnumerator(std::vector<std::string> props, int agents,
                                     std::size_t max_depth)
    : max_depth_(max_depth) {
  if (agents < 1 || agents > 31) throw std::invalid_argument("agents must be in 1..31");
  coalition_count_ = std::uint32_t{1} << agents;
  for (auto& p : props) base_.push_back(Formula::atom(std::move(p)));
  base_.push_back(Formula::top());
  base_.push_back(Formula::bot());
  level_starts_.push_back(0);
}

void FormulaEnumerator::emit(const Formula& f, std::optional<Formula>& out) {
  if (level_ < max_depth_) seen_.push_back(f);
  out = f;
}

void FormulaEnumerator::finish_level() {
  if (level_ == max_depth_) {
    phase_ = Phase::Done;
    return;
  }
  level_starts_.push_back(seen_.size());
  ++level_;
  phase_ = Phase::Not;
  i_ = 0;
}

std::optional<Formula> FormulaEnumerator::next() {
  std::optional<Formula> out;
  while (!out && phase_ != Phase::Done) {
    switch (phase_) {
      case Phase::Base:
        if (i_ < base_.size()) {
          emit(base_[i_++], out);
        } else {
          finish_level();
        }
        break;
      case Phase::Not: {
        const std::size_t lo = level_starts_[level_ - 1];
        const std::size_t hi = level_starts_[level_];
        if (lo + i_ < hi) {
          emit(Formula::neg(seen_[lo + i_]), out);
          ++i_;
        } else {
          phase_ = Phase::And;
          i_ = j_ = 0;
        }
        break;
      }
      case Phase::And: {
        // Pairs over everything shallower than this level, except pairs
        // where both sides are shallower than level - 1.
        const std::size_t total = level_starts_[level_];
        const std::size_t older = level_starts_[level_ - 1];
        if (i_ >= total) {
          phase_ = Phase::Ability;
          i_ = 0;
          mask_ = 0;
        } else if (j_ >= total) {
          ++i_;
          j_ = 0;
        } else if (i_ < older && j_ < older) {
          j_ = older;
        } else {
          emit(Formula::conj(seen_[i_], seen_[j_]), out);
          ++j_;
        }
        break;
      }
      case Phase::Ability:
      case Phase::Inability: {
        const std::size_t lo = level_starts_[level_ - 1];
        const std::size_t hi = level_starts_[level_];
        if (mask_ >= coalition_count_) {
          if (phase_ == Phase::Ability) {
            phase_ = Phase::Inability;
            i_ = 0;
            mask_ = 0;
          } else {
            finish_level();
          }
        } else if (lo + i_ >= hi) {
          ++mask_;
          i_ = 0;
        } else {
          Coalition c = Coalition::from_mask(mask_);
          emit(phase_ == Phase::Ability ? Formula::ability(std::move(c), seen_[lo + i_])
                                        : Formula::inability(std::move(c), seen_[lo + i_]),
               out);
          ++i_;
        }
        break;
      }
      case Phase::Done:
        break;
    }
  }
  return out;
}

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& props, int agents,
                                        std::size_t max_depth) {
  FormulaEnumerator e(props, agents, max_depth);
  std::vector<Formula> out;
  while (auto f = e.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace clab
