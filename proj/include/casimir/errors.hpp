#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical domain of an operation (x <= 0, a1 >= a2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Gamma-function argument hit a non-positive integer.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested expansion regime has no closed form.
class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A defining integral does not converge for the supplied parameters.
class NonConvergentIntegral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An invariant that must hold for every valid input was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace casimir
