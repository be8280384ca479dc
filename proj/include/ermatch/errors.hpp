#pragma once

#include <stdexcept>

namespace ermatch {

// Invalid parameters, malformed files, or broken invariants in user input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds an explicit capacity limit; nothing is approximated silently.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ermatch
