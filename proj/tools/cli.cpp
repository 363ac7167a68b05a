#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "clab/errors.hpp"
#include "clab/formula.hpp"
#include "clab/laws.hpp"
#include "clab/model.hpp"
#include "clab/semantics.hpp"
#include "clab/translation.hpp"
#include "clab/validity.hpp"

namespace clab::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string quote(const std::string& v) {
  if (!v.empty() && v.find_first_of(" \"\\=") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

class Emitter {
 public:
  Emitter(std::ostream& out, bool structured) : out_(out), structured_(structured) {}

  void field(const std::string& key, const std::string& value) {
    if (structured_) {
      out_ << key << '=' << quote(value) << '\n';
    } else {
      out_ << key << ": " << value << '\n';
    }
  }

  /// Several fields on one line in structured mode, one per line otherwise.
  void record(const std::vector<std::pair<std::string, std::string>>& fields) {
    if (!structured_) {
      for (const auto& [k, v] : fields) field(k, v);
      return;
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out_ << (i ? " " : "") << fields[i].first << '=' << quote(fields[i].second);
    }
    out_ << '\n';
  }

  bool structured() const { return structured_; }
  std::ostream& raw() { return out_; }

 private:
  std::ostream& out_;
  bool structured_;
};

const char* boolean(bool b) { return b ? "true" : "false"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_parse(const std::string& text, Emitter& out) {
  const Formula f = parse_formula(text);
  out.field("ast", dump_ast(f));
  out.field("canonical", print_formula(f));
  return 0;
}

int cmd_translate(const std::string& text, Emitter& out) {
  const Formula t = translate(parse_formula(text));
  if (out.structured()) {
    out.field("translation", print_formula(t));
  } else {
    out.raw() << print_formula(t) << '\n';
  }
  return 0;
}

int cmd_check(const std::string& path, const std::string& state_name, const std::string& text,
              Emitter& out) {
  const CoalitionModel m = parse_model(read_file(path));
  const Formula f = parse_formula(text);
  const StateIndex s = state_name.empty() ? m.initial() : m.state_index(state_name);
  const bool result = satisfies(m, s, f);
  out.field("result", boolean(result));
  if (result && f.kind() == FormulaKind::Ability) {
    const auto r = check_ability(m, s, f.coalition(), f.operand());
    out.field("witness", format_profile(m, r.witness->action));
  } else if (result && f.kind() == FormulaKind::Inability) {
    const auto r = check_inability(m, s, f.coalition(), f.operand());
    for (const auto& [own, other] : r.witness->counters) {
      out.field("counter", format_profile(m, own) + " => " + format_profile(m, other));
    }
  }
  return result ? 0 : 1;
}

Bounds bounds_from(int agents, int states, int actions, bool all_states,
                   std::vector<std::string> props) {
  Bounds b;
  b.min_agents = 1;
  b.max_agents = agents;
  b.max_states = states;
  b.max_actions_per_agent = actions;
  b.vary_all_states = all_states;
  b.props = std::move(props);
  b.validate();
  return b;
}

int cmd_countermodel(const std::string& text, const Bounds& base, Emitter& out) {
  const Formula f = parse_formula(text);
  const auto atoms = propositions_of(f);
  Bounds b = base;
  b.props.assign(atoms.begin(), atoms.end());
  const Verdict v = find_countermodel(f, b);
  if (const auto* cx = std::get_if<Counterexample>(&v)) {
    const CoalitionModel shown = cx->model.with_initial(cx->state);
    const std::string state = shown.state_name(cx->state);
    if (out.structured()) {
      out.record({{"result", "counterexample"},
                  {"at", state},
                  {"models_checked", std::to_string(cx->models_checked)}});
      std::istringstream lines(print_model(shown));
      for (std::string line; std::getline(lines, line);) out.field("model", line);
    } else {
      out.raw() << print_model(shown) << "# at: " << state << '\n'
                << "# models_checked: " << cx->models_checked << '\n';
    }
    return 1;
  }
  const auto& done = std::get<NoCounterexampleWithinBounds>(v);
  out.record({{"result", "exhausted"},
              {"models_checked", std::to_string(done.models_checked)},
              {"states_checked", std::to_string(done.states_checked)}});
  return 0;
}

void emit_row(const LawResult& r, Emitter& out) {
  out.record({{"law", r.id},
              {"expected", to_string(r.expected)},
              {"found", boolean(r.found)},
              {"instantiations", std::to_string(r.instantiations)},
              {"models_checked", std::to_string(r.models_checked)},
              {"result", r.passed ? "PASS" : "FAIL"}});
}

void emit_detail(const LawResult& r, Emitter& out) {
  if (r.hit) {
    out.record({{"instance", print_formula(*r.hit_formula)},
                {"at", r.hit->model.state_name(r.hit->state)},
                {"model_index", std::to_string(r.hit->model_index)}});
  } else {
    out.field("instance", r.expected == Expectation::Valid ? "no counterexample within bounds"
                                                          : "none found within bounds");
  }
  if (!r.replay) {
    out.field("fixture", "none");
    return;
  }
  for (const auto& c : r.replay->claims) {
    out.record({{"fixture", c.model},
                {"formula", c.formula},
                {"expected", boolean(c.expected)},
                {"observed", boolean(c.observed)}});
  }
  out.field("replay", r.replay->passed ? "PASS" : "FAIL");
}

int cmd_laws(const std::string& id, Bounds b, Emitter& out) {
  b.props = {"p", "q"};
  LawReport report{b, {}};
  const Law* only = nullptr;
  if (!id.empty()) {
    only = find_law(id);
    if (!only) throw Usage("unknown law '" + id + "'");
    report.rows.push_back(run_law(*only, b));
  } else {
    report = run_laws(b);
  }
  if (out.structured()) {
    for (const auto& r : report.rows) emit_row(r, out);
  } else {
    out.raw() << render_report(report);
  }
  if (only) emit_detail(report.rows.front(), out);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coalition logic with inability: parse, check, translate, search."};
  app.require_subcommand(1);
  bool structured = false;
  app.add_flag("--structured", structured, "key=value records");

  std::string formula, model_path, state, law_id;
  int agents = 2, states = 3, actions = 2;
  bool all_states = false;
  auto bounds_flags = [&](CLI::App* sub) {
    sub->add_option("--agents", agents, "max agents")->check(CLI::PositiveNumber);
    sub->add_option("--states", states, "max states")->check(CLI::PositiveNumber);
    sub->add_option("--actions", actions, "max actions per agent")->check(CLI::PositiveNumber);
    sub->add_flag("--all-states", all_states, "vary outcomes at every state");
  };

  auto* parse = app.add_subcommand("parse", "print AST and canonical form");
  parse->add_option("formula", formula)->required();
  auto* check = app.add_subcommand("check", "evaluate a formula on a model");
  check->add_option("model", model_path)->required();
  check->add_option("formula", formula)->required();
  check->add_option("--state", state, "state name (default: init)");
  auto* tr = app.add_subcommand("translate", "rewrite I[C] into !E[C]");
  tr->add_option("formula", formula)->required();
  auto* cm = app.add_subcommand("countermodel", "search bounded models for a falsifier");
  cm->add_option("formula", formula)->required();
  bounds_flags(cm);
  auto* laws = app.add_subcommand("laws", "run the law catalog");
  laws->add_option("--law", law_id, "single law id");
  bounds_flags(laws);

  for (auto* sub : {parse, check, tr, cm, laws}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Emitter emit(out, structured);
  try {
    if (parse->parsed()) return cmd_parse(formula, emit);
    if (tr->parsed()) return cmd_translate(formula, emit);
    if (check->parsed()) return cmd_check(model_path, state, formula, emit);
    const Bounds b = bounds_from(agents, states, actions, all_states, {});
    if (cm->parsed()) return cmd_countermodel(formula, b, emit);
    return cmd_laws(law_id, b, emit);
  } catch (const ModelError& e) {
    err << "error: " << model_path << ": " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace clab::cli
