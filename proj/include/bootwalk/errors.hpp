#pragma once

#include <stdexcept>
#include <string>

namespace bootwalk {

// Rejected input or configuration. The CLI reports these and exits with 1.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPrimeError : ValidationError {
  using ValidationError::ValidationError;
};

struct BadValuesError : ValidationError {
  using ValidationError::ValidationError;
};

struct UnsupportedGroupError : ValidationError {
  using ValidationError::ValidationError;
};

struct OddStepsError : ValidationError {
  using ValidationError::ValidationError;
};

struct BudgetExceededError : ValidationError {
  using ValidationError::ValidationError;
};

struct ZeroExponentError : ValidationError {
  using ValidationError::ValidationError;
};

struct NonZeroMeanError : ValidationError {
  using ValidationError::ValidationError;
};

// A guarantee the library itself promises was observed to fail.
// The CLI reports these and exits with 2.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

struct SingularMatrixError : ContractError {
  using ContractError::ContractError;
};

struct ScanCapError : ContractError {
  using ContractError::ContractError;
};

}  // namespace bootwalk
