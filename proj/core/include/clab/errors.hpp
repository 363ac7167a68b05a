#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace clab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `offset` is a 0-based byte offset into the input.
class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(std::size_t offset, std::vector<std::string> expected,
                     const std::string& detail);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class DuplicateAgentInCoalition : public Error {
 public:
  DuplicateAgentInCoalition(int agent, std::size_t offset);

  int agent() const noexcept { return agent_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  int agent_;
  std::size_t offset_;
};

enum class ModelErrorKind {
  Syntax,
  PartialOutcome,
  UnknownState,
  UnknownAction,
  UnknownAgent,
  MissingInit,
  MissingActions,
  MissingAgents,
  NoStates,
  Invalid,
};

const char* to_string(ModelErrorKind kind) noexcept;

/// Model text or model construction rejected. `line` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. a missing declaration).
class ModelError : public Error {
 public:
  ModelError(ModelErrorKind kind, std::size_t line, const std::string& detail);

  ModelErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ModelErrorKind kind_;
  std::size_t line_;
};

class CoalitionOutOfRange : public Error {
 public:
  using Error::Error;
};

class ProfilesNotPartition : public Error {
 public:
  using Error::Error;
};

class UnknownStateName : public Error {
 public:
  using Error::Error;
};

class BoundsTooSmall : public Error {
 public:
  using Error::Error;
};

class BoundsInsufficientForFormula : public Error {
 public:
  using Error::Error;
};

class FixtureMissing : public Error {
 public:
  using Error::Error;
};

}  // namespace clab
