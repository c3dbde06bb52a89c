#pragma once

#include <stdexcept>
#include <string>

namespace ekpdim {

/// Raised when an operation's documented precondition does not hold
/// (non-root input, r out of range, singular base change, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed quiver, representation or fragment data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or iteration cap was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ekpdim
