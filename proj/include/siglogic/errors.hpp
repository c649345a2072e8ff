#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace siglogic {

/// Failure while parsing a reaction expression. `offset` is the byte
/// position of the offending character in the input text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Malformed input file (SIF or MIDAS). `line` is 1-based, 0 when the
/// error is not tied to a specific line.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Violated precondition or inconsistent arguments.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown experiment, protein or node name.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scoring could not produce a value (e.g. no comparable data points).
class ScoringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation refused because an enumeration bound would be exceeded.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace siglogic
