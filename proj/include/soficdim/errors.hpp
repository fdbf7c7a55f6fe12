#pragma once

#include <stdexcept>
#include <string>

namespace soficdim {

// Input text could not be parsed. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

// A work limit was exceeded before the computation finished.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested method does not apply to the given family
// (no rank-1 product, no recursive structure, hypotheses unmet, ...).
class MethodError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A row vector that was required to stay on span{v} left it.
// Signals a caller bug or an invalid structure, so it is not a MethodError.
class ProportionalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative scheme hit its cap. Carries the last enclosing bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " (last bracket [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "])"),
          lo_(lo), hi_(hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace soficdim
