#include "clab/errors.hpp"

namespace clab {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

FormulaSyntaxError::FormulaSyntaxError(std::size_t offset,
                                       std::vector<std::string> expected,
                                       const std::string& detail)
    : Error("syntax error at offset " + std::to_string(offset) + ": " + detail +
            (expected.empty() ? std::string() : " (expected " + join_expected(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

DuplicateAgentInCoalition::DuplicateAgentInCoalition(int agent, std::size_t offset)
    : Error("duplicate agent " + std::to_string(agent) + " in coalition at offset " +
            std::to_string(offset)),
      agent_(agent),
      offset_(offset) {}

const char* to_string(ModelErrorKind kind) noexcept {
  switch (kind) {
    case ModelErrorKind::Syntax: return "SyntaxError";
    case ModelErrorKind::PartialOutcome: return "PartialOutcome";
    case ModelErrorKind::UnknownState: return "UnknownState";
    case ModelErrorKind::UnknownAction: return "UnknownAction";
    case ModelErrorKind::UnknownAgent: return "UnknownAgent";
    case ModelErrorKind::MissingInit: return "MissingInit";
    case ModelErrorKind::MissingActions: return "MissingActions";
    case ModelErrorKind::MissingAgents: return "MissingAgents";
    case ModelErrorKind::NoStates: return "NoStates";
    case ModelErrorKind::Invalid: return "InvalidModel";
  }
  return "ModelError";
}

ModelError::ModelError(ModelErrorKind kind, std::size_t line, const std::string& detail)
    : Error(std::string(to_string(kind)) +
            (line > 0 ? " at line " + std::to_string(line) : std::string()) + ": " + detail),
      kind_(kind),
      line_(line) {}

}  // namespace clab
