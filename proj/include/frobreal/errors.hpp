#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobreal {

/// Arity or degree mismatch between operations, diagrams or generators.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live on different graded spaces.
class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pairing or map that was required to be invertible is not.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sign-convention self-check failed; indicates a bug in the engine.
class SignConventionFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An enumeration would exceed its configured candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t evaluated, std::uint64_t budget)
      : std::runtime_error(what), evaluated_(evaluated), budget_(budget) {}

  std::uint64_t evaluated() const { return evaluated_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t evaluated_;
  std::uint64_t budget_;
};

/// Malformed textual input; offset is a byte position in the source.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::invalid_argument(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace frobreal
