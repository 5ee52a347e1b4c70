#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in rings with different numbers of variables.
class ArityError : public Error {
 public:
  ArityError(std::size_t lhs, std::size_t rhs, const std::string& where)
      : Error(where + ": arity mismatch (" + std::to_string(lhs) + " vs " +
              std::to_string(rhs) + ")"),
        lhs_(lhs),
        rhs_(rhs) {}

  [[nodiscard]] std::size_t lhs() const { return lhs_; }
  [[nodiscard]] std::size_t rhs() const { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

/// Text input could not be parsed. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : Error(msg + " (column " + std::to_string(column) + ")"), detail_(msg), column_(column) {}

  [[nodiscard]] std::size_t column() const { return column_; }
  /// Message without the column suffix.
  [[nodiscard]] const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t column_;
};

/// A documented precondition of an operation was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dq
