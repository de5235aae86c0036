#pragma once

#include <stdexcept>

namespace fractalfilter {

/// Thrown when a numerical run produces non-finite values.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an explicit scheme is asked to run with violated stability
/// conditions and no override is set.
struct StabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fractalfilter
