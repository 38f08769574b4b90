#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fasp {

/// Base of every error raised by the toolkit. The CLI maps these to exit
/// codes and prefixes the message with the phase that produced it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A truth degree outside [0,1] was requested.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Evaluation referenced an atom outside the interpretation's universe.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on a program outside its supported class.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class GroundError : public Error {
 public:
  using Error::Error;
};

/// The immediate consequence operator did not become stationary in time.
class NonterminationError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// A forced strategy whose preconditions do not hold.
class StrategyError : public Error {
 public:
  using Error::Error;
};

class OracleBudgetError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fasp
