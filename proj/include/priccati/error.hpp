#pragma once

#include <stdexcept>
#include <string>

namespace priccati {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or mathematically invalid input (zero divisor, non-prime p, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// The instance is valid but outside what the library can handle
// (wildly ramified places).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// A truncated computation did not carry enough precision to certify its result.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// The solver exhausted its candidate spaces on an instance known to be reducible.
class IncompleteSearchError : public Error {
public:
    using Error::Error;
};

} // namespace priccati
