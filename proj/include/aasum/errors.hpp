#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aasum {

/// Argument outside the mathematical domain of an operation (n = 0, x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem hypothesis or structural precondition does not hold for the
/// given inputs (wrong weight class, h not identically one, empty tuple).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A real-valued function reached a pipeline that requires exact values.
class DomainMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Direct summation would exceed the configured term budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input; carries the zero-based offset of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Invalid verifier or CLI configuration, detected before any evaluation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace aasum
