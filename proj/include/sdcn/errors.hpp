#pragma once

#include <stdexcept>
#include <string>

namespace sdcn {

// Operand shapes do not line up (matmul, delivery, loss inputs, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A scalar argument is outside its documented range (k, t, epsilon, probe dims).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A file could not be parsed; message carries the offending line number.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite value or undefined quantity (infinite divergence, NaN loss).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A soft cluster frequency collapsed to zero.
struct DegenerateClusterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optimization diverged.
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or unknown configuration key/value.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sdcn
