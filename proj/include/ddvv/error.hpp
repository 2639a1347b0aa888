#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddvv {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates a stated hypothesis of the check that was requested.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf entries, or a decomposition that could not be computed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Structured input is well-formed text but inconsistent (bad sizes etc).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ddvv
