#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latmat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input or a violated precondition. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : ValidationError(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A pair of elements lacks a meet or join, or a lattice-only operation got a non-lattice.
class LatticeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A real power that is undefined (0 to a negative power, negative base to a non-integer power).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A hypothesis of one of the eigenvalue results is not met by the given instance.
class HypothesisError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Iterative method failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace latmat
