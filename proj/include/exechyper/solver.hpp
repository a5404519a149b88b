#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exechyper/model.hpp"

namespace exechyper::solver {

// Width at which bisection on the terminal speed (and on holdings when
// inverting the schedule) stops.
inline constexpr double kBisectionWidth = 1e-12;

// Residual bound the shooting solve is expected to meet.
inline constexpr double kRootResidualTol = 1e-9;

// Terminal speeds are searched within [X/T / 2^60, X/T * 2^60]; leaving that
// range raises BracketFailureError.
inline constexpr int kMaxBracketExpansions = 60;

struct ShootingResult {
    double v0 = 0.0;       // terminal trading speed, > 0
    double residual = 0.0; // shooting equation LHS minus T at the returned v0
    int iterations = 0;    // total LHS evaluations
    std::pair<double, double> bracket{0.0, 0.0};
    // Every (v0, lhs) evaluation made on the way to the root, in call order.
    std::vector<std::pair<double, double>> evals;
};

struct SolveReport {
    model::ModelParams params;
    ShootingResult shooting;
    model::Trajectory trajectory;
    double cost = 0.0;
    std::map<std::string, double> checks;
};

// Time needed to trade holdings X down to zero at terminal speed v0, i.e.
// the left-hand side of the horizon-matching equation
//   (X / v0) * 2F1(1/2, 1/(k+1); 3/2; -lam sigma^2 X^2 / (k eta v0^(k+1))).
// Strictly decreasing in v0.
double shooting_lhs(const model::ModelParams& p, double v0);

// Finds the terminal speed whose depletion time equals the horizon T:
// geometric bracket expansion from X/T, bisection to kBisectionWidth, then a
// secant polish. Throws NoRootError (carrying the zero-speed depletion time)
// when k > 1 and T lies at or beyond it, BracketFailureError when expansion
// bounds are exhausted.
ShootingResult solve_v0(const model::ModelParams& p);

// Time at which holdings pass level x, given terminal speed v0:
//   T - (x / v0) * 2F1(1/2, 1/(k+1); 3/2; -lam sigma^2 x^2 / (k eta v0^(k+1))).
// Strictly decreasing in x.
double implicit_time_of_x(const model::ModelParams& p, double v0, double x);

// Inverse of implicit_time_of_x on [0, X] by bisection; requires t in [0, T].
// Throws InversionFailureError when t is not attained on [0, X].
double x_at_time(const model::ModelParams& p, double v0, double t);

// Trading speed at holdings level x from the conserved first integral:
//   v = (v0^(k+1) + lam sigma^2 x^2 / (k eta))^(1/(k+1)).
double speed_at_x(const model::ModelParams& p, double v0, double x);

// Closed-form schedule for k = 1:
//   x(t) = X sinh(kappa (T-t)) / sinh(kappa T), kappa = sigma sqrt(lam/eta).
// Throws std::domain_error unless k == 1.
double closed_form_k1(const model::ModelParams& p, double t);

// Whether the zero-terminal-speed schedule is well posed (requires k > 1).
bool zero_speed_admissible(const model::ModelParams& p);

// Holdings at time t under the zero-terminal-speed schedule,
//   x(t) = ((k-1)(T-t)/(k+1))^((k+1)/(k-1)) * (lam sigma^2/(k eta))^(1/(k-1)).
// Throws std::domain_error for k <= 1.
double zero_speed_x(const model::ModelParams& p, double t);

// zero_speed_x at t = 0, the largest position the zero-speed schedule can
// unwind over horizon T.
double zero_speed_x0(const model::ModelParams& p);

// Horizon at which the zero-speed schedule starting from holdings X runs
// out; for k > 1 this is the supremum of attainable depletion times and the
// boundary carried by NoRootError.
double zero_speed_depletion_time(const model::ModelParams& p);

// Full pipeline: shooting solve, trajectory sampling on a uniform n_samples
// grid, Simpson cost, and self-checks (boundary errors, first-integral
// drift, deviation from an independently integrated ODE solution).
SolveReport solve(const model::ModelParams& p, int n_samples);

}  // namespace exechyper::solver
