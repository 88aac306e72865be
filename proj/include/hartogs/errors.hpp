#pragma once

#include <stdexcept>
#include <string>

namespace hartogs {

/// A point lies outside the domain an operation requires.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Caller broke an argument precondition (n = 0, k < 2 where k >= 2 is needed, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A kernel evaluation came too close to its singular set to be trusted.
class SingularEvaluation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The series tail bound could not be pushed under the requested tolerance.
class NonconvergentTruncation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hartogs
