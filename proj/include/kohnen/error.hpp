#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kohnen {

/// Bad input or a violated precondition. The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request needs more coefficients (or table entries) than are available.
/// Carries the largest argument that the available data can serve.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, std::uint64_t max_usable)
      : std::runtime_error(what), max_usable_(max_usable) {}

  std::uint64_t max_usable() const noexcept { return max_usable_; }

 private:
  std::uint64_t max_usable_;
};

/// A mathematical self-check failed (wrong dimension, failed certification,
/// broken identity). The CLI maps this to exit status 4.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sieve or table size above the configured maximum.
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace kohnen
