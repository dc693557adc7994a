#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bbqaoa {

// Qubit/variable count outside the supported range.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Operand dimensions disagree (state vs. diagonal, protocol lengths, ...).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller-supplied argument violates an operation's precondition.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// More distinct clauses requested than exist over n variables.
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column "
                             + std::to_string(column) + ")"),
          message_(what),
          line_(line),
          column_(column)
    {
    }

    // Message without the location suffix.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// File-system failures; the message always carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbqaoa
