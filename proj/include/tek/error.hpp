#pragma once

#include <stdexcept>
#include <string>

namespace tek {

/// Malformed input (JSON, rationals, element encodings). CLI exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a precondition. CLI exit code 3.
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A probe exhausted its iteration bound. CLI exit code 4.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal identity check failed (normal-form bug, broken relation).
struct CheckFailure : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace tek
