#pragma once

#include <vector>

#include "exechyper/model.hpp"
#include "exechyper/solver.hpp"

namespace exechyper::verify {

struct OdeSolution {
    std::vector<double> t_grid;    // ascending, t_grid.front() = 0, back() = T
    std::vector<double> x_values;  // non-increasing in t
    std::vector<double> v_values;  // speeds recovered from x via the first integral
    int step_count = 0;
};

// Integrates the reduced dynamics xdot = -(v0^(k+1) + c x^2)^(1/(k+1))
// backward from the terminal state (t = T, x = 0) with fixed-step classical
// RK4, then reports the solution in forward time order. When v0 is
// effectively zero (< 1e-10) and k > 1, the first step leaves the degenerate
// rest point through the local power-law expansion instead of RK4.
//
// Built directly on the ODE right-hand side; shares nothing with the
// hypergeometric solver, so the two can check each other.
OdeSolution integrate_first_order(const model::ModelParams& p, double v0, int n_steps);

// Max residual of the second-order optimality condition
//   xddot = 2 lam sigma^2 / (eta k (k+1)) * x * v^(1-k)
// over the solution, with xddot = y dy/du reconstructed from (u, y) = (x, xdot)
// by second-order finite differences. Needs at least 5 samples.
double reduction_check(const model::ModelParams& p, const OdeSolution& sol);

// Sup-norm deviation between a report's sampled holdings and the RK4
// solution at the same terminal speed, interpolated onto the report grid.
double cross_validate(const model::ModelParams& p, const solver::SolveReport& report,
                      int n_steps);

// Same comparison for a bare trajectory; used by the solve pipeline to fill
// its oracle deviation check.
double cross_validate_trajectory(const model::ModelParams& p, const model::Trajectory& traj,
                                 int n_steps);

}  // namespace exechyper::verify
