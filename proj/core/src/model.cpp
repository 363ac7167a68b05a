#include "clab/model.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

// ---------------------------------------------------------------------------
// ActionProfile

ActionProfile::ActionProfile(Coalition coalition, std::vector<ActionIndex> choices)
    : coalition_(std::move(coalition)), choices_(std::move(choices)) {
  if (coalition_.size() != choices_.size()) {
    throw std::invalid_argument("profile needs one choice per coalition member");
  }
}

std::optional<ActionIndex> ActionProfile::choice_of(int agent) const {
  const auto& m = coalition_.members();
  auto it = std::lower_bound(m.begin(), m.end(), agent);
  if (it == m.end() || *it != agent) return std::nullopt;
  return choices_[static_cast<std::size_t>(it - m.begin())];
}

// ---------------------------------------------------------------------------
// CoalitionModel

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || s == "->") return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '#';
  });
}

bool valid_prop_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  if (s == "true" || s == "false") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

[[noreturn]] void invalid(const std::string& what) {
  throw ModelError(ModelErrorKind::Invalid, 0, what);
}

}  // namespace

CoalitionModel::CoalitionModel(int agents, std::vector<std::string> states,
                               std::vector<std::vector<std::string>> actions,
                               std::vector<StateIndex> outcome, Valuation valuation,
                               StateIndex initial)
    : agents_(agents),
      states_(std::move(states)),
      actions_(std::move(actions)),
      outcome_(std::move(outcome)),
      valuation_(std::move(valuation)),
      initial_(initial) {
  if (agents_ < 1) invalid("at least one agent is required");
  if (states_.empty()) invalid("at least one state is required");
  if (actions_.size() != static_cast<std::size_t>(agents_)) invalid("one action set per agent");
  std::set<std::string_view> names;
  for (const auto& s : states_) {
    if (!valid_identifier(s)) invalid("bad state name '" + s + "'");
    if (!names.insert(s).second) invalid("duplicate state '" + s + "'");
  }
  strides_.assign(actions_.size(), 1);
  profile_count_ = 1;
  for (std::size_t i = actions_.size(); i-- > 0;) {
    const auto& acts = actions_[i];
    if (acts.empty()) invalid("agent " + std::to_string(i + 1) + " has no actions");
    std::set<std::string_view> seen;
    for (const auto& a : acts) {
      if (!valid_identifier(a)) invalid("bad action name '" + a + "'");
      if (!seen.insert(a).second) invalid("duplicate action '" + a + "'");
    }
    strides_[i] = profile_count_;
    profile_count_ *= acts.size();
  }
  if (outcome_.size() != states_.size() * profile_count_) invalid("outcome function is not total");
  for (StateIndex t : outcome_) {
    if (t >= states_.size()) invalid("outcome names an undeclared state");
  }
  for (const auto& [prop, members] : valuation_) {
    if (!valid_prop_name(prop)) invalid("bad proposition name '" + prop + "'");
    if (members.size() != states_.size()) invalid("valuation of '" + prop + "' has wrong size");
  }
  if (initial_ >= states_.size()) invalid("initial state out of range");
}

std::optional<StateIndex> CoalitionModel::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateIndex>(it - states_.begin());
}

StateIndex CoalitionModel::state_index(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw UnknownStateName("unknown state '" + std::string(name) + "'");
}

const std::vector<bool>* CoalitionModel::extension_of(std::string_view prop) const {
  auto it = valuation_.find(prop);
  return it == valuation_.end() ? nullptr : &it->second;
}

bool CoalitionModel::holds(std::string_view prop, StateIndex s) const {
  const auto* ext = extension_of(prop);
  return ext != nullptr && (*ext)[s];
}

CoalitionModel CoalitionModel::with_initial(StateIndex s) const {
  if (s >= states_.size()) throw std::out_of_range("state index out of range");
  CoalitionModel copy = *this;
  copy.initial_ = s;
  return copy;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(ModelErrorKind kind, std::size_t line, const std::string& detail) {
  throw ModelError(kind, line, detail);
}

std::optional<int> parse_positive(const std::string& s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  if (!std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  const int v = std::stoi(s);
  if (v <= 0) return std::nullopt;
  return v;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

CoalitionModel parse_model(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);

  // Pass 1: declarations.
  std::optional<int> agents;
  std::size_t agents_line = 0;
  std::vector<std::string> states;
  std::map<std::string, StateIndex, std::less<>> state_ids;
  std::map<int, std::pair<std::size_t, std::vector<std::string>>> actions;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    const std::string& kw = t[0];
    if (kw == "agents") {
      if (t.size() != 2) fail(ModelErrorKind::Syntax, line.number, "expected 'agents <n>'");
      if (agents) fail(ModelErrorKind::Syntax, line.number, "duplicate 'agents' line");
      agents = parse_positive(t[1]);
      if (!agents) fail(ModelErrorKind::Syntax, line.number, "agent count must be a positive integer");
      agents_line = line.number;
    } else if (kw == "state") {
      if (t.size() != 2 || !valid_identifier(t[1])) {
        fail(ModelErrorKind::Syntax, line.number, "expected 'state <id>'");
      }
      if (!state_ids.emplace(t[1], states.size()).second) {
        fail(ModelErrorKind::Syntax, line.number, "duplicate state '" + t[1] + "'");
      }
      states.push_back(t[1]);
    } else if (kw == "actions") {
      if (t.size() < 3) fail(ModelErrorKind::Syntax, line.number, "expected 'actions <agent> <id>+'");
      auto agent = parse_positive(t[1]);
      if (!agent) fail(ModelErrorKind::Syntax, line.number, "agent index must be a positive integer");
      std::vector<std::string> acts(t.begin() + 2, t.end());
      std::set<std::string> uniq;
      for (const auto& a : acts) {
        if (!valid_identifier(a)) fail(ModelErrorKind::Syntax, line.number, "bad action name '" + a + "'");
        if (!uniq.insert(a).second) {
          fail(ModelErrorKind::Syntax, line.number, "duplicate action '" + a + "'");
        }
      }
      if (!actions.emplace(*agent, std::make_pair(line.number, std::move(acts))).second) {
        fail(ModelErrorKind::Syntax, line.number,
             "duplicate 'actions' line for agent " + std::to_string(*agent));
      }
    } else if (kw != "init" && kw != "prop" && kw != "outcome" && kw != "default") {
      fail(ModelErrorKind::Syntax, line.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!agents) fail(ModelErrorKind::MissingAgents, 0, "no 'agents' line");
  if (states.empty()) fail(ModelErrorKind::NoStates, 0, "no 'state' lines");
  for (const auto& [agent, decl] : actions) {
    if (agent > *agents) {
      fail(ModelErrorKind::UnknownAgent, decl.first,
           "agent " + std::to_string(agent) + " but the model declares " +
               std::to_string(*agents) + " agents");
    }
  }
  std::vector<std::vector<std::string>> action_sets;
  for (int agent = 1; agent <= *agents; ++agent) {
    auto it = actions.find(agent);
    if (it == actions.end()) {
      fail(ModelErrorKind::MissingActions, agents_line,
           "no 'actions' line for agent " + std::to_string(agent));
    }
    action_sets.push_back(it->second.second);
  }

  auto resolve_state = [&](const std::string& name, std::size_t line) {
    auto it = state_ids.find(name);
    if (it == state_ids.end()) fail(ModelErrorKind::UnknownState, line, "unknown state '" + name + "'");
    return it->second;
  };

  std::size_t profile_count = 1;
  std::vector<std::size_t> strides(action_sets.size());
  for (std::size_t i = action_sets.size(); i-- > 0;) {
    strides[i] = profile_count;
    profile_count *= action_sets[i].size();
  }

  // Pass 2: references.
  std::optional<StateIndex> initial;
  CoalitionModel::Valuation valuation;
  std::vector<std::optional<StateIndex>> explicit_outcome(states.size() * profile_count);
  std::vector<std::optional<StateIndex>> defaults(states.size());
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    const std::string& kw = t[0];
    if (kw == "init") {
      if (t.size() != 2) fail(ModelErrorKind::Syntax, line.number, "expected 'init <state>'");
      if (initial) fail(ModelErrorKind::Syntax, line.number, "duplicate 'init' line");
      initial = resolve_state(t[1], line.number);
    } else if (kw == "prop") {
      if (t.size() < 2 || !valid_prop_name(t[1])) {
        fail(ModelErrorKind::Syntax, line.number, "expected 'prop <name> <state>*'");
      }
      std::vector<bool> members(states.size(), false);
      for (std::size_t k = 2; k < t.size(); ++k) members[resolve_state(t[k], line.number)] = true;
      if (!valuation.emplace(t[1], std::move(members)).second) {
        fail(ModelErrorKind::Syntax, line.number, "duplicate 'prop' line for '" + t[1] + "'");
      }
    } else if (kw == "outcome") {
      const std::size_t n = action_sets.size();
      if (t.size() != n + 4 || t[n + 2] != "->") {
        fail(ModelErrorKind::Syntax, line.number,
             "expected 'outcome <state> <" + std::to_string(n) + " actions> -> <state>'");
      }
      const StateIndex from = resolve_state(t[1], line.number);
      std::size_t index = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& acts = action_sets[i];
        auto it = std::find(acts.begin(), acts.end(), t[i + 2]);
        if (it == acts.end()) {
          fail(ModelErrorKind::UnknownAction, line.number,
               "agent " + std::to_string(i + 1) + " has no action '" + t[i + 2] + "'");
        }
        index += static_cast<std::size_t>(it - acts.begin()) * strides[i];
      }
      const StateIndex to = resolve_state(t[n + 3], line.number);
      auto& slot = explicit_outcome[from * profile_count + index];
      if (slot) fail(ModelErrorKind::Syntax, line.number, "duplicate outcome");
      slot = to;
    } else if (kw == "default") {
      if (t.size() != 4 || t[2] != "->") {
        fail(ModelErrorKind::Syntax, line.number, "expected 'default <state> -> <state>'");
      }
      const StateIndex from = resolve_state(t[1], line.number);
      if (defaults[from]) fail(ModelErrorKind::Syntax, line.number, "duplicate 'default' line");
      defaults[from] = resolve_state(t[3], line.number);
    }
  }
  if (!initial) fail(ModelErrorKind::MissingInit, 0, "no 'init' line");

  std::vector<StateIndex> outcome(explicit_outcome.size());
  for (StateIndex s = 0; s < states.size(); ++s) {
    for (std::size_t p = 0; p < profile_count; ++p) {
      const auto& slot = explicit_outcome[s * profile_count + p];
      if (slot) {
        outcome[s * profile_count + p] = *slot;
      } else if (defaults[s]) {
        outcome[s * profile_count + p] = *defaults[s];
      } else {
        std::string profile;
        std::size_t rest = p;
        for (std::size_t i = 0; i < action_sets.size(); ++i) {
          profile += ' ' + action_sets[i][rest / strides[i]];
          rest %= strides[i];
        }
        fail(ModelErrorKind::PartialOutcome, 0,
             "no outcome for state '" + states[s] + "' under profile" + profile);
      }
    }
  }
  return CoalitionModel(*agents, std::move(states), std::move(action_sets), std::move(outcome),
                        std::move(valuation), *initial);
}

std::string print_model(const CoalitionModel& m) {
  std::string out = "agents " + std::to_string(m.agent_count()) + "\n";
  for (const auto& s : m.states()) out += "state " + s + "\n";
  out += "init " + m.state_name(m.initial()) + "\n";
  for (int i = 1; i <= m.agent_count(); ++i) {
    out += "actions " + std::to_string(i);
    for (const auto& a : m.actions(i)) out += ' ' + a;
    out += '\n';
  }
  for (const auto& [prop, members] : m.valuation()) {
    out += "prop " + prop;
    for (StateIndex s = 0; s < members.size(); ++s) {
      if (members[s]) out += ' ' + m.state_name(s);
    }
    out += '\n';
  }
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    for (std::size_t p = 0; p < m.profile_count(); ++p) {
      out += "outcome " + m.state_name(s);
      for (int i = 1; i <= m.agent_count(); ++i) {
        out += ' ' + m.actions(i)[(p / m.stride(i)) % m.actions(i).size()];
      }
      out += " -> " + m.state_name(m.outcome(s, p)) + "\n";
    }
  }
  return out;
}

std::string format_profile(const CoalitionModel& m, const ActionProfile& p,
                           std::string_view separator) {
  const auto& members = p.coalition().members();
  if (members.empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k > 0) out += separator;
    out += std::to_string(members[k]) + ':' + m.actions(members[k]).at(p.choices()[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coalitions and profiles

void require_in_range(const CoalitionModel& m, const Coalition& c) {
  if (c.max_agent() > m.agent_count()) {
    throw CoalitionOutOfRange("coalition " + c.to_string() + " exceeds the model's " +
                              std::to_string(m.agent_count()) + " agents");
  }
}

Coalition complement(const CoalitionModel& m, const Coalition& c) {
  require_in_range(m, c);
  std::vector<int> rest;
  for (int i = 1; i <= m.agent_count(); ++i) {
    if (!c.contains(i)) rest.push_back(i);
  }
  return Coalition::from_members(std::move(rest));
}

std::vector<ActionProfile> profiles(const CoalitionModel& m, const Coalition& c) {
  require_in_range(m, c);
  const auto& members = c.members();
  std::vector<ActionProfile> out;
  std::vector<ActionIndex> digits(members.size(), 0);
  while (true) {
    out.emplace_back(c, digits);
    std::size_t k = members.size();
    while (k > 0) {
      --k;
      if (++digits[k] < m.actions(members[k]).size()) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
    if (members.empty()) return out;
  }
}

std::size_t profile_index(const CoalitionModel& m, const ActionProfile& a,
                          const ActionProfile& b) {
  if (!a.coalition().disjoint_with(b.coalition()) ||
      a.coalition().size() + b.coalition().size() != static_cast<std::size_t>(m.agent_count()) ||
      a.coalition().max_agent() > m.agent_count() || b.coalition().max_agent() > m.agent_count()) {
    throw ProfilesNotPartition("profiles over " + a.coalition().to_string() + " and " +
                               b.coalition().to_string() + " do not partition the agents");
  }
  std::size_t index = 0;
  for (const ActionProfile* p : {&a, &b}) {
    const auto& members = p->coalition().members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      const ActionIndex act = p->choices()[k];
      if (act >= m.actions(members[k]).size()) {
        throw std::out_of_range("action index out of range for agent " +
                                std::to_string(members[k]));
      }
      index += act * m.stride(members[k]);
    }
  }
  return index;
}

StateIndex apply(const CoalitionModel& m, StateIndex state, const ActionProfile& a,
                 const ActionProfile& b) {
  return m.outcome(state, profile_index(m, a, b));
}

// ---------------------------------------------------------------------------
// Bounds and enumeration

Bounds Bounds::defaults() {
  Bounds b;
  b.props = {"p", "q"};
  return b;
}

void Bounds::validate() const {
  if (min_agents < 1 || max_agents < 1 || max_states < 1 || max_actions_per_agent < 1) {
    throw std::invalid_argument("bounds must all be >= 1");
  }
  if (min_agents > max_agents) throw std::invalid_argument("min_agents exceeds max_agents");
  if (max_agents > 16) throw std::invalid_argument("at most 16 agents are supported");
  std::set<std::string> uniq(props.begin(), props.end());
  if (uniq.size() != props.size()) throw std::invalid_argument("duplicate proposition in bounds");
  for (const auto& p : props) {
    if (!valid_prop_name(p)) throw std::invalid_argument("bad proposition name '" + p + "'");
  }
}

std::size_t ModelShape::max_actions() const {
  return actions.empty() ? 0 : *std::max_element(actions.begin(), actions.end());
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("model space exceeds 2^64 models");
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::size_t profile_count_of(const ModelShape& shape) {
  std::size_t p = 1;
  for (std::size_t a : shape.actions) p *= a;
  return p;
}

// Models up to this many are built once and kept.
constexpr std::uint64_t kCacheLimit = 1u << 18;

}  // namespace

std::uint64_t ModelSpace::count_shape(const ModelShape& shape, std::size_t props,
                                      bool vary_all_states) {
  const std::uint64_t cells =
      checked_mul(vary_all_states ? shape.states : 1, profile_count_of(shape));
  return checked_mul(checked_pow(2, checked_mul(props, shape.states)),
                     checked_pow(shape.states, cells));
}

ModelSpace::ModelSpace(Bounds bounds) : ModelSpace(std::move(bounds), [](const ModelShape&) { return true; }) {}

ModelSpace::ModelSpace(Bounds bounds, const std::function<bool(const ModelShape&)>& keep)
    : bounds_(std::move(bounds)) {
  bounds_.validate();
  const auto max_a = static_cast<std::size_t>(bounds_.max_actions_per_agent);
  for (int n = bounds_.min_agents; n <= bounds_.max_agents; ++n) {
    for (int s = 1; s <= bounds_.max_states; ++s) {
      std::vector<std::size_t> acts(static_cast<std::size_t>(n), 1);
      while (true) {
        ModelShape shape{n, static_cast<std::size_t>(s), acts};
        if (keep(shape)) {
          const std::uint64_t count = count_shape(shape, bounds_.props.size(), bounds_.vary_all_states);
          blocks_.push_back(Block{std::move(shape), size_, count});
          size_ += count;
          if (size_ < count) throw std::overflow_error("model space exceeds 2^64 models");
        }
        std::size_t k = acts.size();
        while (k > 0 && acts[k - 1] == max_a) acts[--k] = 1;
        if (k == 0) break;
        ++acts[k - 1];
      }
    }
  }
  if (size_ <= kCacheLimit) {
    cache_.reserve(size_);
    for (const auto& block : blocks_) {
      for (std::uint64_t i = 0; i < block.count; ++i) cache_.push_back(decode(block, i));
    }
  }
}

const ModelSpace::Block& ModelSpace::block_of(std::uint64_t index) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                             [](std::uint64_t i, const Block& b) { return i < b.first; });
  return *(it - 1);
}

CoalitionModel ModelSpace::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("model index out of range");
  if (!cache_.empty()) return cache_[index];
  const Block& b = block_of(index);
  return decode(b, index - b.first);
}

void ModelSpace::for_each(
    std::uint64_t begin, std::uint64_t end,
    const std::function<bool(std::uint64_t, const CoalitionModel&)>& fn) const {
  end = std::min(end, size_);
  if (!cache_.empty()) {
    for (std::uint64_t i = begin; i < end; ++i) {
      if (!fn(i, cache_[i])) return;
    }
    return;
  }
  for (std::uint64_t i = begin; i < end; ++i) {
    const Block& b = block_of(i);
    if (!fn(i, decode(b, i - b.first))) return;
  }
}

CoalitionModel ModelSpace::decode(const Block& block, std::uint64_t offset) const {
  const ModelShape& shape = block.shape;
  const std::size_t n_states = shape.states;
  const std::size_t profiles = profile_count_of(shape);
  const std::uint64_t cells = (bounds_.vary_all_states ? n_states : 1) * profiles;
  const std::uint64_t outcome_count = checked_pow(n_states, cells);

  std::uint64_t val_code = offset / outcome_count;
  std::uint64_t out_code = offset % outcome_count;

  std::vector<std::string> states;
  for (std::size_t s = 0; s < n_states; ++s) states.push_back("s" + std::to_string(s + 1));
  std::vector<std::vector<std::string>> actions;
  for (std::size_t a : shape.actions) {
    std::vector<std::string> acts;
    for (std::size_t k = 0; k < a; ++k) acts.push_back("a" + std::to_string(k + 1));
    actions.push_back(std::move(acts));
  }

  // Last cell is the least significant digit.
  std::vector<StateIndex> outcome(n_states * profiles);
  if (!bounds_.vary_all_states) {
    for (std::size_t s = 0; s < n_states; ++s) {
      for (std::size_t p = 0; p < profiles; ++p) outcome[s * profiles + p] = s;
    }
  }
  for (std::uint64_t c = cells; c-- > 0;) {
    outcome[c] = static_cast<StateIndex>(out_code % n_states);
    out_code /= n_states;
  }

  // Bit (j * |S| + k) of the code sets prop j at state k.
  CoalitionModel::Valuation valuation;
  for (std::size_t j = 0; j < bounds_.props.size(); ++j) {
    std::vector<bool> members(n_states);
    for (std::size_t k = 0; k < n_states; ++k) {
      members[k] = (val_code >> (j * n_states + k)) & 1u;
    }
    valuation.emplace(bounds_.props[j], std::move(members));
  }
  return CoalitionModel(shape.agents, std::move(states), std::move(actions), std::move(outcome),
                        std::move(valuation), 0);
}

}  // namespace clab
