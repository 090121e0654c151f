#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pipecalc {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated input rule. `assumption` is the numbered modelling assumption
/// the rule enforces, or 0 for structural rules (duplicate ids and the like).
struct Violation {
  int assumption = 0;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Multiplier does not fit the pipeline, or has a factor below one.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a scalar model (rate <= 0, table span).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Human ceiling requested for an empty authority set.
class UndefinedCeilingError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Trivial allocation requested on a pipeline with tied bottlenecks.
class TiedBottleneckError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internally asserted equivalence fails. On valid input this
/// indicates a defect in this library.
class InternalVerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pipecalc

namespace pipecalc {

// Unreadable file or malformed document syntax.
class DocumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace pipecalc
