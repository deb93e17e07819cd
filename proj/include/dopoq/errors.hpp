#pragma once

#include <stdexcept>
#include <string>

namespace dopoq {

// Bad user-supplied parameter or config value (CLI exit code 1).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// NaN/Inf appeared in a field, or an estimator went numerically bad (exit code 2).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every trajectory of an ensemble tripped the diffusion-positivity guard (exit code 3).
struct AllTrajectoriesRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested analytic branch does not exist (e.g. nonzero homogeneous solution below threshold).
struct BranchAbsent : std::domain_error {
    using std::domain_error::domain_error;
};

// Caller invoked an operation outside its domain of validity.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace dopoq
