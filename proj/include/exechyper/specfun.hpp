#pragma once

#include <cstdint>

namespace exechyper::specfun {

// Hard budget for series summation. Exceeding it without meeting the
// truncation rule falls back to quadrature where valid, else raises
// NoConvergenceError.
inline constexpr int kMaxSeriesTerms = 100000;

// Truncation rule: stop once the next term drops below
// kSeriesRelTol * |partial sum|, with kSeriesAbsFloor as an absolute floor.
inline constexpr double kSeriesRelTol = 1e-16;
inline constexpr double kSeriesAbsFloor = 1e-300;

enum class Hyp2F1Method {
    DirectSeries,   // power series in t, |t| < 1
    PfaffSeries,    // series after the t -> t/(t-1) argument transformation
    Quadrature      // adaptive integration of the Euler integral form
};

struct Hyp2F1Params {
    double a;
    double b;
    double c;   // must not be zero or a negative integer
    double t;   // real argument, t < 1
};

struct Hyp2F1Eval {
    double value;
    Hyp2F1Method method;
    int terms_used;          // series terms summed, or subintervals for quadrature
    double estimated_error;  // bound on |value - exact|
};

// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
double pochhammer(double x, unsigned n);

// Gamma function on the positive reals. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

// Gauss hypergeometric function 2F1(a, b; c; t) for real t < 1.
//
// Dispatch: |t| < 1 sums the defining series directly; t <= -1 applies the
// t -> t/(t-1) transformation first, which maps the argument into (0, 1).
// If either series fails to converge within kMaxSeriesTerms and the Euler
// integral preconditions hold, the quadrature path is used instead.
//
// Throws std::domain_error for invalid (c, t), NoConvergenceError when no
// path can meet tolerance.
Hyp2F1Eval hyp2f1(const Hyp2F1Params& p);

// Independent evaluation of 2F1 through its Euler integral representation,
// integrated adaptively after substitutions that absorb the endpoint
// singularities. Requires c > a > 0 and t < 1.
//
// This path shares no code with the series evaluation and serves as its
// cross-check.
double hyp2f1_quadrature(const Hyp2F1Params& p);

}  // namespace exechyper::specfun
