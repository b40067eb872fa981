#pragma once

#include <stdexcept>
#include <string>

namespace parikh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: unknown letters, bad file syntax, violated preconditions on arguments.
class InputError : public Error {
public:
    using Error::Error;
};

/// Syntax error carrying the 1-based line and column of the offending token.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A structural precondition does not hold (graph not Eulerian, chain invalid, ...).
class StructuralError : public InputError {
public:
    using InputError::InputError;
};

/// A configured resource guard would be exceeded.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Two computation routes disagreed, or an exact division was not exact. Indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace parikh
