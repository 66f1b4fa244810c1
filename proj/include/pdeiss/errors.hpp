#pragma once

#include <stdexcept>
#include <string>

namespace pdeiss {

/// Base class for solver/runtime failures (as opposed to precondition
/// violations, which throw std::invalid_argument).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A simulated field crossed the blow-up guard or went non-finite.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double t)
        : Error(what), blowup_time(t) {}
    double blowup_time;
};

/// The per-step convective stability limit was violated.
class StabilityError : public Error {
public:
    StabilityError(const std::string& what, double t, double dt, double limit)
        : Error(what), time(t), dt(dt), limit(limit) {}
    double time;
    double dt;
    double limit;
};

/// Kernel successive approximation failed to converge.
class KernelConvergenceError : public Error {
public:
    using Error::Error;
};

/// Tridiagonal elimination hit a zero pivot.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration is malformed; carries the offending key and line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, int line)
        : Error(what), key(std::move(key)), line(line) {}
    std::string key;
    int line;
};

}  // namespace pdeiss
