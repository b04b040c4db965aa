#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shocknet {

/// Input that violates a documented precondition (bad parameter, malformed file).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in a line-oriented input file.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Numeric failure: underflow, disagreement between dual evaluation routes.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact enumeration refused because the problem exceeds the configured limit.
class LimitError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace shocknet
