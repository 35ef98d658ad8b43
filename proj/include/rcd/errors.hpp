#pragma once

#include <stdexcept>
#include <string>

namespace rcd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or extent mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

// Invalid parameter value (even kernel size, bad prox spec, bad config key).
struct ConfigError : Error {
    using Error::Error;
};

// A hard model constraint is violated (e.g. coefficient columns not unit norm).
struct ConstraintError : Error {
    using Error::Error;
};

// Non-finite value produced or consumed.
struct NumericError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace rcd
