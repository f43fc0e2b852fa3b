#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bigraded {

/// Operand shapes or ambient dimensions do not agree.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed point-set text. Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) +
                             (column ? ", column " + std::to_string(column) : std::string()) +
                             ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A mathematical hypothesis required by an operation does not hold for the input
/// (for instance a Kahler different requested for a non-ACM set).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Two independent routes to the same invariant disagreed. Always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bigraded
