// Optimal schedule construction.
//
// The calculus-of-variations problem reduces to the first-order dynamics
// xdot = -(v0^(k+1) + c x^2)^(1/(k+1)) with c = lam sigma^2 / (k eta), whose
// time-to-deplete integral evaluates in closed form through the Gauss
// hypergeometric function. Everything here is built on that implicit
// solution: the terminal speed v0 comes from matching the depletion time of
// X to the horizon T (a scalar root-find in a strictly monotone function),
// and the schedule itself from inverting the implicit relation in x.

#include "exechyper/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "exechyper/errors.hpp"
#include "exechyper/specfun.hpp"
#include "exechyper/verify.hpp"

namespace exechyper::solver {

namespace {

// Time to trade holdings x down to zero at terminal speed v0.
double depletion_time(const model::ModelParams& p, double v0, double x) {
    if (x == 0.0) {
        return 0.0;
    }
    const double arg = -p.speed_coupling() * x * x / std::pow(v0, p.k + 1.0);
    const auto eval = specfun::hyp2f1({0.5, 1.0 / (p.k + 1.0), 1.5, arg});
    return x / v0 * eval.value;
}

}  // namespace

double shooting_lhs(const model::ModelParams& p, double v0) {
    p.validate();
    if (!(v0 > 0.0)) {
        throw std::domain_error("shooting_lhs: requires v0 > 0");
    }
    return depletion_time(p, v0, p.X);
}

double zero_speed_depletion_time(const model::ModelParams& p) {
    return (p.k + 1.0) / (p.k - 1.0) * std::pow(p.X, (p.k - 1.0) / (p.k + 1.0)) *
           std::pow(1.0 / p.speed_coupling(), 1.0 / (p.k + 1.0));
}

ShootingResult solve_v0(const model::ModelParams& p) {
    p.validate();

    // For k > 1 depletion times are bounded by the zero-speed schedule's
    // horizon; beyond it no terminal speed can stretch the trade to T.
    if (p.k > 1.0) {
        const double t_max = zero_speed_depletion_time(p);
        if (p.T >= t_max) {
            std::ostringstream msg;
            msg << "no terminal speed reaches horizon T=" << p.T
                << "; depletion times are bounded by " << t_max
                << " (zero-speed schedule)";
            throw NoRootError(msg.str(), t_max);
        }
    }

    ShootingResult res;
    const auto f = [&](double v) {
        const double lhs = depletion_time(p, v, p.X);
        res.evals.emplace_back(v, lhs);
        ++res.iterations;
        return lhs - p.T;
    };

    // Expand geometrically from the linear-schedule speed X/T until the
    // residual changes sign. f is strictly decreasing in v.
    double lo = p.X / p.T;
    double hi = lo;
    double flo = f(lo);
    double fhi = flo;
    if (flo > 0.0) {
        for (int i = 0; fhi > 0.0; ++i) {
            if (i >= kMaxBracketExpansions) {
                throw BracketFailureError("solve_v0: root exceeds 2^60 * X/T");
            }
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            fhi = f(hi);
        }
    } else if (flo < 0.0) {
        for (int i = 0; flo < 0.0; ++i) {
            if (i >= kMaxBracketExpansions) {
                throw BracketFailureError("solve_v0: root below 2^-60 * X/T");
            }
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            flo = f(lo);
        }
    } else {
        res.v0 = lo;
        res.residual = 0.0;
        res.bracket = {lo, hi};
        return res;
    }
    res.bracket = {lo, hi};

    // Bisection; the bracket keeps f(lo) >= 0 >= f(hi).
    while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;  // interval no longer splittable in floating point
        }
        const double fm = f(mid);
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    double v0 = 0.5 * (lo + hi);
    double residual = f(v0);

    // One secant step often sharpens the residual by a few digits; keep it
    // only when it does and stays inside the bracket.
    if (flo != fhi) {
        const double vs = lo + flo * (hi - lo) / (flo - fhi);
        if (vs > lo && vs < hi) {
            const double fs = f(vs);
            if (std::abs(fs) < std::abs(residual)) {
                v0 = vs;
                residual = fs;
            }
        }
    }

    res.v0 = v0;
    res.residual = residual;
    return res;
}

double implicit_time_of_x(const model::ModelParams& p, double v0, double x) {
    p.validate();
    if (!(v0 > 0.0)) {
        throw std::domain_error("implicit_time_of_x: requires v0 > 0");
    }
    if (x < 0.0 || x > p.X * (1.0 + 1e-12)) {
        throw std::domain_error("implicit_time_of_x: requires x in [0, X]");
    }
    return p.T - depletion_time(p, v0, x);
}

double x_at_time(const model::ModelParams& p, double v0, double t) {
    p.validate();
    if (!(v0 > 0.0)) {
        throw std::domain_error("x_at_time: requires v0 > 0");
    }
    if (t < 0.0 || t > p.T) {
        throw std::domain_error("x_at_time: requires t in [0, T]");
    }

    // g(x) = implicit_time_of_x(x) - t is strictly decreasing, g(0) >= 0.
    const auto g = [&](double x) { return p.T - depletion_time(p, v0, x) - t; };

    const double gX = g(p.X);
    if (gX >= 0.0) {
        // t at or before the time the schedule held X. Attribute a hair of
        // shooting residual to the endpoint; anything larger is a real miss.
        if (gX < 1e-9 * std::max(1.0, p.T)) {
            return p.X;
        }
        throw InversionFailureError("x_at_time: t precedes the trajectory start for this v0");
    }

    double lo = 0.0;
    double hi = p.X;
    while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (g(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double speed_at_x(const model::ModelParams& p, double v0, double x) {
    p.validate();
    if (v0 < 0.0 || x < 0.0) {
        throw std::domain_error("speed_at_x: requires v0 >= 0 and x >= 0");
    }
    return std::pow(std::pow(v0, p.k + 1.0) + p.speed_coupling() * x * x, 1.0 / (p.k + 1.0));
}

double closed_form_k1(const model::ModelParams& p, double t) {
    p.validate();
    if (std::abs(p.k - 1.0) > 1e-12) {
        throw std::domain_error("closed_form_k1: only defined for k = 1");
    }
    if (t < 0.0 || t > p.T) {
        throw std::domain_error("closed_form_k1: requires t in [0, T]");
    }
    const double kappa = p.sigma * std::sqrt(p.lam / p.eta);
    return p.X * std::sinh(kappa * (p.T - t)) / std::sinh(kappa * p.T);
}

bool zero_speed_admissible(const model::ModelParams& p) {
    p.validate();
    return p.k > 1.0;
}

double zero_speed_x(const model::ModelParams& p, double t) {
    p.validate();
    if (!(p.k > 1.0)) {
        throw std::domain_error("zero_speed_x: schedule exists only for k > 1");
    }
    if (t < 0.0 || t > p.T) {
        throw std::domain_error("zero_speed_x: requires t in [0, T]");
    }
    const double expo = (p.k + 1.0) / (p.k - 1.0);
    return std::pow((p.k - 1.0) * (p.T - t) / (p.k + 1.0), expo) *
           std::pow(p.speed_coupling(), 1.0 / (p.k - 1.0));
}

double zero_speed_x0(const model::ModelParams& p) {
    return zero_speed_x(p, 0.0);
}

SolveReport solve(const model::ModelParams& p, int n_samples) {
    p.validate();
    if (n_samples < 3) {
        throw InsufficientSamplesError("solve: n_samples must be at least 3");
    }

    SolveReport report;
    report.params = p;
    report.shooting = solve_v0(p);
    const double v0 = report.shooting.v0;

    const double target = -p.k * p.eta * std::pow(v0, p.k + 1.0);
    report.trajectory.params = p;
    report.trajectory.v0 = v0;
    report.trajectory.points.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = (i == n_samples - 1)
                             ? p.T
                             : p.T * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        const double x = x_at_time(p, v0, t);
        const double v = speed_at_x(p, v0, x);
        const double residual = model::beltrami_constant(p, x, v) - target;
        report.trajectory.points.push_back({t, x, v, residual});
    }
    report.trajectory.validate();

    double beltrami_max = 0.0;
    for (const auto& pt : report.trajectory.points) {
        beltrami_max = std::max(beltrami_max, std::abs(pt.beltrami_residual));
    }
    report.checks["beltrami_max_residual"] = beltrami_max;
    report.checks["boundary_x0_error"] = std::abs(report.trajectory.points.front().x - p.X);
    report.checks["boundary_xT_error"] = std::abs(report.trajectory.points.back().x);
    report.checks["oracle_max_deviation"] =
        verify::cross_validate_trajectory(p, report.trajectory, 4096);

    report.cost = model::cost_of_trajectory(report.trajectory);
    return report;
}

}  // namespace exechyper::solver
