#pragma once

#include <stdexcept>
#include <string>

namespace solenoid {

// Bad arguments or malformed input. The CLI maps this to exit code 1.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not deliver a result (exit code 2).
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : NumericFailure {
    using NumericFailure::NumericFailure;
};

}  // namespace solenoid
