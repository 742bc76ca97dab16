#pragma once

#include <stdexcept>
#include <string>

namespace gaitcf {

// One kind per failure class the library reports; tests match on these.
enum class ErrorKind {
    Format,                // malformed file / unknown key / bad header
    Ordering,              // non-monotonic timestamps
    Value,                 // non-finite or out-of-range value
    Enumeration,           // unknown activity label
    Completeness,          // required field or record missing
    Io,                    // file system failure (path + OS reason)
    Spec,                  // invalid filter/detector specification
    Length,                // series too short for the operation
    DegenerateInput,       // duplicate timestamps, zero-span input
    InsufficientSteps,     // calibration activity with too few detected steps
    DegenerateDesign,      // regression x-values all identical
    Underdetermined,       // fewer points than coefficients
    UndefinedAverage,      // average over zero steps
    DegenerateDuration,    // zero active duration
    ShortCycle,            // gait cycle shorter than the minimum sample count
    EmptyInput,            // empty list where at least one element is required
    DegenerateDenominator, // error-rate denominator is zero
    UndefinedCorrelation,  // zero variance or too few pairs
    Undefined,             // undefined statistic (e.g. zero total variance)
    Config,                // infeasible generator configuration
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace gaitcf
