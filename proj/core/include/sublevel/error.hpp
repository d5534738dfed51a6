#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sublevel {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position()` is the 0-based offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A precondition on the arguments was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Floating-point evaluation produced a non-finite value.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A size or work ceiling was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace sublevel
