#pragma once

#include <stdexcept>
#include <string>

namespace ftqm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs violate an operation's preconditions.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An iterative method ran out of budget, or a truncated level sum is not
/// accurate enough at the requested temperature.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Two independent routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ftqm
