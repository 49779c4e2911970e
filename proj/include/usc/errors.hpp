// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace usc {

// Base class for every failure raised by the library. Precondition violations
// use std::invalid_argument directly; the types below carry domain meaning the
// caller may want to branch on.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct DegenerateKernelError : Error {
    using Error::Error;
};

struct IntegratorError : Error {
    IntegratorError(const std::string& what, double failing_time)
        : Error(what), time(failing_time) {}
    double time;
};

struct OverdampedSeriesError : Error {
    using Error::Error;
};

struct NoNetCoolingError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace usc
