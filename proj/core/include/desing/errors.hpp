// errors.hpp -- shared error taxonomy for the desingularization engine.
//
// Every loud failure mode of the library is an ErrorKind carried by an Error
// exception.  Drivers and the CLI map kinds onto exit codes and onto the
// machine-readable "reason" field of JSON error reports, so the set of kinds
// is part of the public contract.

#pragma once

#include <stdexcept>
#include <string>

namespace desing {

enum class ErrorKind {
  FrozenCoordinateViolation,   // an automorphism tried to move an exceptional coordinate
  ImpermissibleCenter,         // a blowup center produced a negative exceptional exponent
  R1NotRealizable,             // codim-1 canonical center exists but is not smooth / not a coordinate
  MaximalContactNotRealizable, // no order-1 element of the contact operator ideal is realizable
  CenterNotRealizable,         // a point center is irrational, multi-point, or needs a frozen shift
  MonomialCase,                // internal marker: descent reached the monomial game
  DecompositionIncomplete,     // minimal_primes could not certify a prime decomposition
  NonPureDimensional,          // input components of distinct codimension
  RelativePropertyViolated,    // a center image escaped the allowed singular locus
  BudgetExceeded,              // step budget exhausted before the singular locus emptied
  NotCompleteIntersection,     // syzygy/twist report requires #generators = codimension
  VerificationFailure,         // emitted artifact failed re-verification
  ParseError,                  // problem file rejected (position and expectation attached)
  InvalidInput,                // precondition violated (unit ideal, empty ideal, bad arity, ...)
};

// Stable machine-readable tag for each kind (used in JSON "reason" fields).
const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what_arg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what_arg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace desing
