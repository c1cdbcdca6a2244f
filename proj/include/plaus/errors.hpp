#pragma once

#include <stdexcept>
#include <string>

namespace plaus {

// Base class for everything the toolkit throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (KB, .dist or .mass files). Carries a 1-based
// line/column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Well-formed input with no valid answer: contradictory rule bases,
// conditioning on a null event, total conflict in mass combination,
// enumeration-guard violations.
class SemanticError : public Error {
public:
    using Error::Error;
};

// Bad command-line usage: unknown hypothesis names, unknown suites.
class UsageError : public Error {
public:
    using Error::Error;
};

// A checked internal identity failed. Reaching this is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace plaus
