#pragma once

#include <stdexcept>
#include <string>

namespace stablepgf {

/// Malformed or out-of-contract input: bad JSON, mass != 1, negative
/// probabilities, dimension mismatches, violated preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its certified accuracy
/// (e.g. the root finder exhausted its iteration budget).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A verified hypothesis held but the guaranteed conclusion failed. This
/// can only mean an implementation bug (or a falsified theorem) and must
/// abort loudly rather than degrade into a negative verdict.
struct ConclusionError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace stablepgf
