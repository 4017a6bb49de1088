#pragma once

#include <stdexcept>
#include <string>

namespace latcount {

// Raised when an exhaustive scan (minor enumeration, basis scan, box volume,
// DP table) would exceed the configured work budget.  Callers that reach the
// CLI surface translate this into exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A polyhedron turned out to be unbounded where a bounded one was required.
class UnboundedError : public std::runtime_error {
public:
    explicit UnboundedError(const std::string& what) : std::runtime_error(what) {}
};

// The counting direction c is degenerate for a cone: it is orthogonal to one
// of the adjugate columns, so a denominator factor of the generating function
// would vanish.  The caller must pick a different c.
class DirectionError : public std::runtime_error {
public:
    explicit DirectionError(const std::string& what) : std::runtime_error(what) {}
};

// Instance text could not be parsed; carries a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace latcount
