#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netefficacy {

/// A single violated invariant, addressed by a dotted field path
/// (for example `hetnet.coverage` or `events[2].probability`).
struct Violation {
    std::string path;
    std::string message;

    bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

/// Raised when an operation is called outside its domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a domain object fails validation; carries every violation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(Violations violations);

    const Violations& violations() const noexcept { return violations_; }

private:
    Violations violations_;
};

/// Malformed scenario text. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Command-line misuse, including a scenario that lacks a section the
/// requested command needs.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace netefficacy
