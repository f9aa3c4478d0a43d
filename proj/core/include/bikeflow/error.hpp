#pragma once

#include <stdexcept>
#include <string>

namespace bikeflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input layout: missing header, missing column, unreadable file.
/// The CLI maps these to exit code 2.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Input data that is structurally valid but inconsistent (unknown station
/// ids, partition/network mismatch).
class IngestError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to an operation (index out of range, bad parameter).
class ArgumentError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string &what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

} // namespace bikeflow
