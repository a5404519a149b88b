#pragma once

#include <vector>

namespace exechyper::model {

// Parameters of the execution problem: sell X shares over horizon T while
// paying permanent impact gamma, power-law temporary impact eta (-xdot)^(k+1),
// and quadratic inventory risk lam * sigma^2 * x^2.
struct ModelParams {
    double gamma = 0.0;  // permanent impact coefficient, >= 0
    double eta = 1.0;    // temporary impact coefficient, > 0
    double lam = 1.0;    // risk aversion, > 0
    double sigma = 1.0;  // volatility, > 0
    double k = 1.0;      // impact exponent, > 0
    double X = 1.0;      // initial holdings, > 0
    double T = 1.0;      // horizon, > 0

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    // lam * sigma^2 / (k * eta), the coefficient coupling holdings to speed
    // in the reduced first-order dynamics.
    double speed_coupling() const;
};

struct TrajectoryPoint {
    double t;
    double x;
    double v;                  // trading speed, v = -xdot >= 0
    double beltrami_residual;  // drift of the first integral at this sample
};

struct Trajectory {
    ModelParams params;
    double v0 = 0.0;  // terminal trading speed
    std::vector<TrajectoryPoint> points;

    // Checks sample ordering, uniform spacing, monotone holdings and
    // terminal depletion. Throws std::invalid_argument on violation.
    void validate() const;
};

// Running cost F(x, xdot) = -gamma x xdot + eta (-xdot)^(k+1) + lam sigma^2 x^2.
// Requires xdot <= 0 (selling only).
double impact_integrand(const ModelParams& p, double x, double xdot);

// First integral of the variational problem along optimal paths:
//   lam sigma^2 x^2 - k eta v^(k+1).
// Constant and equal to -k eta v0^(k+1) along an optimal trajectory.
double beltrami_constant(const ModelParams& p, double x, double v);

// Strong Legendre condition: second derivative of the running cost in the
// speed variable, eta k (k+1) v^(k-1). Positive for v > 0. For k < 1 the
// value diverges as v -> 0; the IEEE infinity that pow produces there is
// returned as-is so callers can treat it as a flagged sentinel.
double legendre_check(const ModelParams& p, double v);

// Total cost of a sampled trajectory by composite Simpson on its uniform
// grid (Simpson 3/8 absorbs a trailing odd interval). Needs at least three
// samples; throws InsufficientSamplesError otherwise.
double cost_of_trajectory(const Trajectory& traj);

}  // namespace exechyper::model
