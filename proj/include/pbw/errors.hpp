#pragma once

#include <stdexcept>
#include <string>

namespace pbw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: DSL syntax, undeclared names, invalid labelings.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Structurally invalid arguments to a library call (wrong arity, bad labels).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An arity, element count or weight cap was exceeded, or a computation was
/// asked for beyond the bound its certificate covers.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition failed: non-invertible substitution, a
/// morphism that does not respect relations, an internal consistency check.
class MathError : public Error {
 public:
  using Error::Error;
};

}  // namespace pbw
