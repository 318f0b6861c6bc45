#pragma once

#include <stdexcept>
#include <string>

namespace survsched {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or input document violates a stated invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Scenario generation could not produce an instance whose objects are all
// coverable within the attempt bound.
class FeasibilityExhausted : public Error {
 public:
  using Error::Error;
};

// A scheduler or the exact solver cannot satisfy coverage and capacity.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// Contiguous placement asked for more RBs than a sub-band has left.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownFlow : public Error {
 public:
  using Error::Error;
};

// The exact solver hit its node budget before finding any feasible point.
class SearchBudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace survsched
