#pragma once

#include <stdexcept>
#include <string>

namespace geocl {

// Bad user-facing configuration (CLI flags, JSON config). Exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (CSV parse errors, id mismatches). Exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (non-convergent fit, degenerate eigenproblem). Exit code 4.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace geocl
