#pragma once

#include <stdexcept>
#include <string>

namespace ordb {

/// Input data violated a documented contract (bad table, mismatched
/// backend, malformed document, ...). Maps to CLI exit code 1.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configurable resource cap (ball size, search nodes) was exceeded.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A positive cone could not decide a pair required by the requested
/// window (member list too small or inconsistent).
struct ConeWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ordb
