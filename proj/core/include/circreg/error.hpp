#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circreg {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data cannot support the requested computation (too few points,
/// constant samples, bad shape parameters). The CLI maps these to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

class DegenerateSample : public DataError {
public:
    using DataError::DataError;
};

class DegenerateData : public DataError {
public:
    using DataError::DataError;
};

class InvalidShape : public DataError {
public:
    using DataError::DataError;
};

class UnitError : public DataError {
public:
    using DataError::DataError;
};

class FormatError : public DataError {
public:
    using DataError::DataError;
};

class EmptySelection : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : DataError(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row),
          column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// The Moebius link 1 + conj(beta1) x vanishes.
class SingularMap : public Error {
public:
    using Error::Error;
};

/// Maximum-likelihood fitting did not converge. The CLI maps this to exit code 3.
class FitFailure : public Error {
public:
    using Error::Error;
};

}  // namespace circreg
