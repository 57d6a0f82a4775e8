#pragma once

#include <stdexcept>
#include <string>

namespace risopt {

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch coarsely; the distinct types let tests pin down failure modes.

// Mismatched vector/config lengths.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value outside its admissible set (bad level index, bad bit count, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation applied to an object it was not produced for.
struct MisuseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A matrix failed the rank-one admission check.
struct DegeneracyError : std::runtime_error {
    DegeneracyError(const std::string& msg, double ratio)
        : std::runtime_error(msg), eigenvalue_ratio(ratio) {}
    double eigenvalue_ratio;
};

// A solver declined to run because the instance exceeds its budget.
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent physical geometry (coincident positions, bad grid shape).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file. line is 1-based, 0 when not line-oriented.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(msg), line(line_no) {}
    int line;
};

// An experiment plan failed validation before any work was done.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A self-check that should be unreachable fired.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace risopt
