#pragma once

#include <stdexcept>
#include <string>

namespace qising {

// Error categories map one-to-one onto CLI exit codes (see tools/qising.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: out-of-range dimension, field, vertex, or a violated precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input is valid but exceeds what an exhaustive routine can enumerate.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A linear solve did not meet its residual bound.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A structural assumption behind a simplification does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Simulation refused or truncated because of its event budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace qising
