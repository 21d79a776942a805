#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrimeError : public Error {
public:
    using Error::Error;
};

class MixedFieldError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class ShapeMismatchError : public Error {
public:
    using Error::Error;
};

class PrecisionExhaustedError : public Error {
public:
    using Error::Error;
};

/// Malformed input text; carries the 1-based position of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what_arg)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what_arg),
          line_(line),
          column_(column),
          detail_(what_arg) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

class UnknownVariableError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class IndexOutOfRangeError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class EnumerationTooLargeError : public Error {
public:
    using Error::Error;
};

class SearchSpaceTooLargeError : public Error {
public:
    using Error::Error;
};

class DimensionTooLargeError : public Error {
public:
    using Error::Error;
};

/// Two independent routes to the same object disagreed; always an internal bug.
class CrossCheckError : public Error {
public:
    using Error::Error;
};

class NotDifferentialError : public Error {
public:
    using Error::Error;
};

class NotProperError : public Error {
public:
    using Error::Error;
};

class NotQuasifieldError : public Error {
public:
    using Error::Error;
};

class ResidueNotPrimeFieldError : public Error {
public:
    using Error::Error;
};

class NotDerivativeClosedError : public Error {
public:
    using Error::Error;
};

}  // namespace charp
