#pragma once

#include <stdexcept>
#include <string>

namespace pqcat {

/// An argument violates a mathematical precondition (composite modulus,
/// n > m, an excluded parameter range).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size guard would be exceeded (exact-arithmetic cap,
/// sieve limit, machine-word modulus).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interval evaluation stayed indeterminate up to the precision cap.
class PrecisionError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

}  // namespace pqcat
