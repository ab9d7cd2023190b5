#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmsim {

/// Base for every error raised by the library. Subclasses name the failed
/// contract so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative lag,
/// time beyond the horizon, negative residual, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix or container with the wrong shape.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Invalid or insufficient input data (empty samples, unsorted times, too few
/// events, zero volumes).
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (bad parameters, unmapped dimensions, unknown keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Requested operation is not defined for this model class.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// The model is not subcritical and the operation needs it to be.
class StabilityError : public Error {
public:
    StabilityError(const std::string& what, double rho) : Error(what), rho_(rho) {}
    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// Simulation hit its event cap.
class ExplosionError : public Error {
public:
    ExplosionError(const std::string& what, double rho) : Error(what), rho_(rho) {}
    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// Record-level parse failure. Line and column are 1-based; column 0 means the
/// whole row.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Too many bootstrap replicates failed.
class BootstrapError : public Error {
public:
    using Error::Error;
};

/// Duplicate or otherwise unusable order id.
class IdError : public Error {
public:
    using Error::Error;
};

/// Order id is not resting in the book.
class NotFoundError : public Error {
public:
    enum class Reason { Unknown, Filled, Cancelled };
    NotFoundError(const std::string& what, Reason reason) : Error(what), reason_(reason) {}
    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

}  // namespace mmsim
