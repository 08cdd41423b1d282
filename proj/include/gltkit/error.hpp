#pragma once

#include <stdexcept>
#include <string>

namespace gltkit {

/// Violated precondition: bad sizes, out-of-range indices, malformed input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested object would exceed the dense size limits.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace gltkit
