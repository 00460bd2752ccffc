#pragma once

#include <stdexcept>

namespace birkhoff {

// Bad arguments or malformed input. The CLI maps this to exit code 64.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A subset-enumeration helper was asked to walk a set larger than its
// configured bound. Callers should fall back to a polynomial-time check.
struct EnumerationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact linear solve hit a singular collocation matrix.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace birkhoff
