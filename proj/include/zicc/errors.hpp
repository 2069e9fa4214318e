#pragma once

#include <stdexcept>
#include <string>

namespace zicc {

// Malformed or inconsistent input data (bad table rows, impossible censoring pattern).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: singular denominators, corrupted sampler state, zero variance.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Resultant length too small to define a circular mean.
struct DegenerateMeanError : NumericalError {
  explicit DegenerateMeanError(const std::string& msg) : NumericalError(msg) {}
};

// Bad command-line or configuration usage.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zicc
