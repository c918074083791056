#pragma once

#include <stdexcept>
#include <string>

namespace gpn {

/// Invalid run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or degenerate input data (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure during computation, e.g. a non-convergent fit
/// (CLI exit code 4).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gpn
