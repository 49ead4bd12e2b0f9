#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace relphase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was not met (shape, Hermiticity, normalization...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested path family or feature is not supported.
class NotImplemented : public Error {
 public:
  using Error::Error;
};

/// A geometric phase is undefined: nodal passage along the path, or a
/// vanishing weighted phase-factor sum.
class UndefinedPhase : public Error {
 public:
  explicit UndefinedPhase(const std::string& what, std::optional<std::size_t> member = std::nullopt)
      : Error(member ? what + " (member " + std::to_string(*member) + ")" : what), member_(member) {}

  std::optional<std::size_t> member() const { return member_; }

 private:
  std::optional<std::size_t> member_;
};

/// Text input could not be parsed or failed validation. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An internal invariant was breached. Should be unreachable.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace relphase
