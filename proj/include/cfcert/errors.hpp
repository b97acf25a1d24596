#pragma once

#include <stdexcept>
#include <string>

namespace cfcert {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Integer-context operation applied to a non-monic (non algebraic-integer) input.
class NotMonicForIntegerContext : public Error {
 public:
  using Error::Error;
};

/// The factor search could not certify irreducibility within its budget.
class IrreducibilityUndecided : public Error {
 public:
  using Error::Error;
};

/// A root selector could not pick a unique root at the precision cap.
class SelectorAmbiguous : public Error {
 public:
  using Error::Error;
};

/// Adaptive refinement hit the precision cap without reaching its target.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Zero where a nonzero value is required (reciprocal, division, log).
class ZeroInput : public Error {
 public:
  using Error::Error;
};

/// An exact-arithmetic combination would exceed the configured degree cap.
class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Conjugate inputs where distinct algebraic numbers are required.
class ConjugateInputs : public Error {
 public:
  using Error::Error;
};

/// A denominator ball contains zero and cannot be used.
class QNearZero : public Error {
 public:
  using Error::Error;
};

/// Strict growth of |q_n| could not be certified at the working precision.
class MonotonicityNotCertified : public Error {
 public:
  using Error::Error;
};

/// An unbounded search exceeded its iteration budget.
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of the exclusion argument certifiably fails.
class HypothesisViolated : public Error {
 public:
  HypothesisViolated(const std::string& name, const std::string& what)
      : Error(name + ": " + what), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Sequence-spec parse or validation failure; message includes a JSON path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Malformed closed-form expression in a sequence spec.
class ExpressionError : public Error {
 public:
  using Error::Error;
};

/// Structurally unusable hypothesis parameters (e.g. d < 2).
class HypothesisShapeError : public Error {
 public:
  using Error::Error;
};

/// Corpus generation could not reach the requested count within budget.
class GenerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Three-valued certified predicate result.
enum class Tri { yes, no, undecided };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "undecided";
  }
}

}  // namespace cfcert
