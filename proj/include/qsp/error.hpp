#pragma once

#include <stdexcept>
#include <string>

namespace qsp {

// Input that violates a documented precondition (bad sizes, bounds, names).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not be completed (NaN cost, singular closure, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsp
