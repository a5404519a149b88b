// Independent oracle for the hypergeometric solver: fixed-step RK4 on the
// reduced first-order dynamics, plus consistency checks derived from the
// second-order optimality condition.

#include "exechyper/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exechyper/errors.hpp"

namespace exechyper::verify {

namespace {

// Derivative at `at` of the parabola through (u0,y0), (u1,y1), (u2,y2).
double lagrange3_deriv(double u0, double u1, double u2, double y0, double y1, double y2,
                       double at) {
    return y0 * (2.0 * at - u1 - u2) / ((u0 - u1) * (u0 - u2)) +
           y1 * (2.0 * at - u0 - u2) / ((u1 - u0) * (u1 - u2)) +
           y2 * (2.0 * at - u0 - u1) / ((u2 - u0) * (u2 - u1));
}

}  // namespace

OdeSolution integrate_first_order(const model::ModelParams& p, double v0, int n_steps) {
    p.validate();
    if (!(v0 >= 0.0)) {
        throw std::domain_error("integrate_first_order: requires v0 >= 0");
    }
    if (n_steps < 16) {
        throw std::invalid_argument("integrate_first_order: n_steps must be at least 16");
    }

    const double c = p.speed_coupling();
    const double vpow = std::pow(v0, p.k + 1.0);
    const auto rhs = [&](double x) {
        // Backward time: holdings grow from the empty terminal state.
        return std::pow(vpow + c * x * x, 1.0 / (p.k + 1.0));
    };

    const double h = p.T / static_cast<double>(n_steps);
    std::vector<double> x_back(static_cast<std::size_t>(n_steps) + 1);
    x_back[0] = 0.0;
    std::size_t start = 0;

    // v0 = 0 makes the empty state a rest point of the backward flow; RK4
    // would sit on it forever. Leave it along the local power-law branch
    // x ~ ((k-1) tau / (k+1))^((k+1)/(k-1)) instead.
    if (v0 < 1e-10 && p.k > 1.0) {
        const double expo = (p.k + 1.0) / (p.k - 1.0);
        x_back[1] = std::pow((p.k - 1.0) * h / (p.k + 1.0), expo) *
                    std::pow(c, 1.0 / (p.k - 1.0));
        start = 1;
    }

    for (std::size_t i = start; i < static_cast<std::size_t>(n_steps); ++i) {
        const double x = x_back[i];
        const double k1 = rhs(x);
        const double k2 = rhs(x + 0.5 * h * k1);
        const double k3 = rhs(x + 0.5 * h * k2);
        const double k4 = rhs(x + h * k3);
        x_back[i + 1] = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(x_back[i + 1])) {
            throw StepFailureError("integrate_first_order: non-finite state at step " +
                                   std::to_string(i + 1));
        }
    }

    OdeSolution sol;
    sol.step_count = n_steps;
    sol.t_grid.resize(x_back.size());
    sol.x_values.resize(x_back.size());
    sol.v_values.resize(x_back.size());
    for (std::size_t i = 0; i < x_back.size(); ++i) {
        const std::size_t j = x_back.size() - 1 - i;  // reverse into forward time
        sol.t_grid[i] = (j == 0) ? p.T : p.T * static_cast<double>(n_steps - j) /
                                             static_cast<double>(n_steps);
        sol.x_values[i] = x_back[j];
        sol.v_values[i] = rhs(x_back[j]);
    }
    return sol;
}

double reduction_check(const model::ModelParams& p, const OdeSolution& sol) {
    p.validate();
    const std::size_t n = sol.x_values.size();
    if (n < 5 || sol.t_grid.size() != n || sol.v_values.size() != n) {
        throw InsufficientSamplesError("reduction_check: needs at least 5 aligned samples");
    }

    // Work in the phase plane (u, y) = (x, xdot). The optimality condition
    // xddot = coef * x * v^(1-k) must match y dy/du along the solution.
    const double coef = 2.0 * p.lam * p.sigma * p.sigma / (p.eta * p.k * (p.k + 1.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = sol.v_values[i];
        if (v == 0.0 && p.k > 1.0) {
            continue;  // degenerate rest point, condition holds in the limit
        }
        std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);
        const double d = lagrange3_deriv(sol.x_values[j - 1], sol.x_values[j],
                                         sol.x_values[j + 1], -sol.v_values[j - 1],
                                         -sol.v_values[j], -sol.v_values[j + 1],
                                         sol.x_values[i]);
        const double xddot = -v * d;  // y dy/du with y = -v at sample i
        const double target = coef * sol.x_values[i] * std::pow(v, 1.0 - p.k);
        worst = std::max(worst, std::abs(xddot - target));
    }
    return worst;
}

double cross_validate_trajectory(const model::ModelParams& p, const model::Trajectory& traj,
                                 int n_steps) {
    const OdeSolution sol = integrate_first_order(p, traj.v0, n_steps);
    const double h = p.T / static_cast<double>(n_steps);
    double worst = 0.0;
    for (const auto& pt : traj.points) {
        const auto idx = static_cast<std::size_t>(
            std::clamp(std::floor(pt.t / h), 0.0, static_cast<double>(n_steps - 1)));
        const double t0 = sol.t_grid[idx];
        const double w = std::clamp((pt.t - t0) / h, 0.0, 1.0);
        const double x_ode = (1.0 - w) * sol.x_values[idx] + w * sol.x_values[idx + 1];
        worst = std::max(worst, std::abs(pt.x - x_ode));
    }
    return worst;
}

double cross_validate(const model::ModelParams& p, const solver::SolveReport& report,
                      int n_steps) {
    return cross_validate_trajectory(p, report.trajectory, n_steps);
}

}  // namespace exechyper::verify
