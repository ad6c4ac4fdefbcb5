#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (negative eigenvalue, epsilon too large for the plateau to exist, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A run configuration or named option is malformed.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// A linear solve or iteration broke down.
class NumericalError : public Error {
public:
    using Error::Error;
};

// The shooting engine found no sign change of the boundary mismatch.
class RootNotFound : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Not enough cross-section modes were solved to certify the requested
// part of the global spectrum.
class InsufficientModes : public Error {
public:
    InsufficientModes(const std::string& what, std::size_t required_j_max)
        : Error(what), required_j_max_(required_j_max) {}

    std::size_t required_j_max() const noexcept { return required_j_max_; }

private:
    std::size_t required_j_max_;
};

// The hypotheses of a theorem experiment do not hold for its input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace steklov
