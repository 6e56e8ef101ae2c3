#pragma once

#include <stdexcept>
#include <string>

namespace hjwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on arguments was violated (bad grid, out-of-domain point, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two fields that must share a grid do not.
class GridMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Non-finite values, solver breakdown, convergence failure.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration (unknown key, malformed value, bad flag).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace hjwave
