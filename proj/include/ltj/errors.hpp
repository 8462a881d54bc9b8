#pragma once

#include <stdexcept>
#include <string>

namespace ltj {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator specification violates its invariants (e.g. truncation too small).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// QR iteration failed to deflate within the sweep budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Theorem evaluated on a spec (or eigenvalue) it does not apply to.
class IncompatibleTheorem : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input. `field()` names the offending member.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error("schema error at '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ltj
