#pragma once

#include <stdexcept>

namespace sqsieve {

// A well-formed request that is too large for desk-scale evaluation.
// The CLI maps this to its own exit code, distinct from usage errors.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sqsieve
