#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecogen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArithmeticError : public Error {
 public:
  enum class Kind {
    division_by_higher_valuation,
    non_square_constant,
    singular_root,
    lift_failure,
    singular_system,
    insufficient_terms,
  };

  ArithmeticError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Schema violations when reading canonical JSON.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A spec that parsed but breaks a structural law (arity, label range, guard overlap).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Window growth, label overflow or explicit caps.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecogen
