#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace makespan {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class UsageError : public Error {
  public:
    using Error::Error;
};

class DivisionByZero : public Error {
  public:
    DivisionByZero() : Error("division by zero") {}
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// No valid schedule exists (battery or eligibility constraints).
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// The exhaustive oracle refused an instance that is too large.
class SizeGuardError : public Error {
  public:
    using Error::Error;
};

/// A schedule references machine or job ids that do not exist.
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// A schedule violates one of the model invariants.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Invalid generator specification.
class SpecError : public Error {
  public:
    using Error::Error;
};

/// Malformed instance text. Line and column are 1-based.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string &what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace makespan
