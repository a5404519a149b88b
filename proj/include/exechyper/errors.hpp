#pragma once

#include <stdexcept>
#include <string>

namespace exechyper {

// Series or quadrature could not reach the requested tolerance within budget.
class NoConvergenceError : public std::runtime_error {
public:
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The shooting equation has no solution for the given horizon. For impact
// exponents k > 1 the depletion time of the zero-terminal-speed schedule is
// finite; horizons at or beyond it cannot be met with positive terminal speed.
class NoRootError : public std::runtime_error {
public:
    NoRootError(const std::string& what, double boundary_time)
        : std::runtime_error(what), boundary_time_(boundary_time) {}

    double boundary_time() const noexcept { return boundary_time_; }

private:
    double boundary_time_;
};

// Sign-change search for the shooting root exceeded its expansion bounds.
class BracketFailureError : public std::runtime_error {
public:
    explicit BracketFailureError(const std::string& what) : std::runtime_error(what) {}
};

// Monotone inversion of the implicit solution could not meet tolerance.
class InversionFailureError : public std::runtime_error {
public:
    explicit InversionFailureError(const std::string& what) : std::runtime_error(what) {}
};

// An ODE integration step produced a non-finite state.
class StepFailureError : public std::runtime_error {
public:
    explicit StepFailureError(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientSamplesError : public std::runtime_error {
public:
    explicit InsufficientSamplesError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace exechyper
