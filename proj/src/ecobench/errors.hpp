// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ecobench {

// Error families map onto the process exit codes used by the C API and
// the CLI: UsageError -> 1, DataError -> 2, ComputeError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration, parameters out of range, shape mismatches.
struct UsageError : Error {
    using Error::Error;
};

// Schema, parse and validation failures in input data.
struct DataError : Error {
    using Error::Error;
};

// Failures while training models or tracking energy.
struct ComputeError : Error {
    using Error::Error;
};

} // namespace ecobench
