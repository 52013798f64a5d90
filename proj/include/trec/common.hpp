#pragma once

#include <stdexcept>
#include <string>

namespace trec {

// Base class for all arithmetic/algebra failures raised by this library.
class MathError : public std::runtime_error {
public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a truncated series is asked for a coefficient beyond the order
// it was computed to.  Callers that control the expansion order catch this and
// retry with a larger order; it must never be silently swallowed.
class TruncationError : public MathError {
public:
  explicit TruncationError(const std::string& what) : MathError(what) {}
};

}  // namespace trec
