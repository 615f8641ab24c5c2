#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace incidence {

// Input data violates a documented invariant (e.g. ward tables that do not
// add up to the declared scenario). Carries the two disagreeing numbers.
class validation_error : public std::runtime_error {
public:
    validation_error(const std::string& what, long long expected, long long actual)
        : std::runtime_error(what + " (expected " + std::to_string(expected) + ", got " +
                             std::to_string(actual) + ")"),
          expected_(expected), actual_(actual) {}

    explicit validation_error(const std::string& what)
        : std::runtime_error(what) {}

    long long expected() const noexcept { return expected_; }
    long long actual() const noexcept { return actual_; }

private:
    long long expected_ = 0;
    long long actual_ = 0;
};

// Malformed scenario/table document. Syntax errors carry a 1-based line and
// column; schema errors carry the JSON pointer of the offending value.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line), column_(column) {}

    parse_error(const std::string& what, const std::string& pointer)
        : std::runtime_error(what + " at " + (pointer.empty() ? std::string("/") : pointer)),
          pointer_(pointer) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
    std::string pointer_;
};

class unsupported_configuration : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace incidence
