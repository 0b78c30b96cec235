#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgcl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different instances, carrier invariant violated, or an
/// operation the instance does not provide (e.g. top of a finite-word
/// language module).
class AlgebraError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Evaluation of an expression failed (overflow, negative embedding, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Exploration needed more configurations or states than allowed.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An invariant check would have to rest on an approximated value.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace wgcl
