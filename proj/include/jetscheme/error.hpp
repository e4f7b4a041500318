#pragma once

#include <stdexcept>
#include <string>

namespace jetscheme {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: parse failures, unknown variables, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (pairs, degree, time, enumeration budget) was hit.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A mathematical check failed (certification, validation after re-draws).
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Operands live in different rings.
class RingMismatch : public InputError {
public:
    RingMismatch() : InputError("ring mismatch") {}
};

}  // namespace jetscheme
