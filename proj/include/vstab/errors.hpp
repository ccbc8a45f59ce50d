#pragma once

#include <stdexcept>
#include <string>

namespace vstab {

// Precondition or argument-contract violation by the caller.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or out-of-range input data (node sets, documents, configs).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact integer result would leave the representable range.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative kernel stopped before reaching its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A direction certificate does not match the node set it claims to certify.
struct StaleCertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant; indicates a bug, never a bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace vstab
