#pragma once

#include <stdexcept>
#include <string>

namespace semifore {

// Raised for malformed inputs: bad CSV rows, inconsistent config, calendar
// violations. The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

// Raised when an estimation routine cannot produce a usable model
// (non-convergence without fallback, degenerate inputs, domain violations
// during back-transformation). The CLI maps this family to exit code 2.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace semifore
