#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "exechyper/errors.hpp"
#include "exechyper/model.hpp"

using namespace exechyper;
using model::ModelParams;
using model::Trajectory;
using model::TrajectoryPoint;

namespace {

ModelParams unit_params(double k) {
    ModelParams p;
    p.gamma = 0.0;
    p.eta = p.lam = p.sigma = p.X = p.T = 1.0;
    p.k = k;
    return p;
}

// Uniform-grid trajectory for unit parameters at k = 1, built from the
// explicit sinh solution. Independent of the solver module.
Trajectory sinh_trajectory(int n_samples, double gamma) {
    ModelParams p = unit_params(1.0);
    p.gamma = gamma;
    Trajectory traj;
    traj.params = p;
    traj.v0 = 1.0 / std::sinh(1.0);
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        const double x = std::sinh(1.0 - t) / std::sinh(1.0);
        const double v = std::cosh(1.0 - t) / std::sinh(1.0);
        traj.points.push_back({t, x, v, 0.0});
    }
    return traj;
}

template <typename Fn>
void expect_invalid(Fn&& fn, const std::string& needle) {
    try {
        fn();
        FAIL_CHECK("expected std::invalid_argument mentioning '" << needle << "'");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("parameter validation names the offending field") {
    expect_invalid([] { ModelParams p = unit_params(1.0); p.eta = 0.0; p.validate(); }, "eta");
    expect_invalid([] { ModelParams p = unit_params(1.0); p.lam = -1.0; p.validate(); },
                   "lambda");
    expect_invalid([] { ModelParams p = unit_params(1.0); p.sigma = 0.0; p.validate(); },
                   "sigma");
    expect_invalid([] { ModelParams p = unit_params(1.0); p.gamma = -0.1; p.validate(); },
                   "gamma");
    expect_invalid([] { ModelParams p = unit_params(0.0); p.validate(); }, "k");
    expect_invalid([] { ModelParams p = unit_params(1.0); p.X = 0.0; p.validate(); }, "X");
    expect_invalid([] { ModelParams p = unit_params(1.0); p.T = -2.0; p.validate(); }, "T");
    CHECK_NOTHROW(unit_params(0.125).validate());
}

TEST_CASE("impact integrand combines its three cost channels") {
    ModelParams p = unit_params(1.0);
    CHECK(model::impact_integrand(p, 0.0, 0.0) == 0.0);
    // eta (-xdot)^2 + lam sigma^2 x^2 with unit coefficients
    CHECK(model::impact_integrand(p, 2.0, -1.0) == doctest::Approx(5.0).epsilon(1e-15));

    p.gamma = 0.5;  // adds -gamma x xdot = +1
    CHECK(model::impact_integrand(p, 2.0, -1.0) == doctest::Approx(6.0).epsilon(1e-15));

    ModelParams q = unit_params(0.5);  // selling at speed 4 costs eta * 4^1.5 = 8
    CHECK(model::impact_integrand(q, 0.0, -4.0) == doctest::Approx(8.0).epsilon(1e-15));

    CHECK_THROWS_AS(model::impact_integrand(p, 1.0, 0.5), std::domain_error);
}

TEST_CASE("first integral hits its anchors exactly") {
    ModelParams p = unit_params(0.5);
    const double v0 = 0.6715252914343779;
    const double anchor = -p.k * p.eta * std::pow(v0, p.k + 1.0);

    // Terminal state (x, v) = (0, v0) realizes the conserved value itself.
    CHECK(model::beltrami_constant(p, 0.0, v0) == doctest::Approx(anchor).epsilon(1e-15));
    // A halted state at full holdings leaves only the risk term.
    CHECK(model::beltrami_constant(p, 1.0, 0.0) ==
          doctest::Approx(p.lam * p.sigma * p.sigma).epsilon(1e-15));

    // Along the optimal curve the speed at x = 1 keeps the value conserved.
    const double v = std::pow(std::pow(v0, 1.5) + 2.0, 2.0 / 3.0);
    CHECK(v == doctest::Approx(1.8666375202244737).epsilon(1e-12));
    CHECK(std::abs(model::beltrami_constant(p, 1.0, v) - anchor) < 1e-6);
    CHECK(model::beltrami_constant(p, 1.0, v) ==
          doctest::Approx(-0.27514622922018559).epsilon(1e-10));
}

TEST_CASE("legendre condition value and its degenerate edges") {
    CHECK(model::legendre_check(unit_params(1.0), 0.0) == 2.0);
    CHECK(model::legendre_check(unit_params(1.0), 7.3) == 2.0);  // flat in v at k = 1

    ModelParams p = unit_params(2.0);
    CHECK(model::legendre_check(p, 3.0) == doctest::Approx(18.0).epsilon(1e-15));
    CHECK(model::legendre_check(p, 0.0) == 0.0);

    // k < 1 diverges at rest; the sentinel is the signed infinity itself.
    const double at_rest = model::legendre_check(unit_params(0.5), 0.0);
    CHECK(std::isinf(at_rest));
    CHECK(at_rest > 0.0);

    for (const double k : {0.125, 0.5, 1.0, 2.0, 8.0}) {
        for (const double v : {1e-6, 0.3, 1.0, 50.0}) {
            CHECK(model::legendre_check(unit_params(k), v) > 0.0);
        }
    }
}

TEST_CASE("trajectory cost matches a fine reference integral") {
    // Reference: Simpson at 20000 intervals directly over the sinh solution.
    const auto fine_cost = [](double gamma) {
        ModelParams p = unit_params(1.0);
        p.gamma = gamma;
        const int n = 20000;
        const double h = 1.0 / n;
        double acc = 0.0;
        const auto f = [&](double t) {
            const double x = std::sinh(1.0 - t) / std::sinh(1.0);
            const double xdot = -std::cosh(1.0 - t) / std::sinh(1.0);
            return model::impact_integrand(p, x, xdot);
        };
        for (int i = 0; i + 2 <= n; i += 2) {
            acc += h / 3.0 * (f(i * h) + 4.0 * f((i + 1) * h) + f((i + 2) * h));
        }
        return acc;
    };

    const double reference = fine_cost(0.0);
    // Analytic value of the reference integral is coth(1).
    CHECK(reference == doctest::Approx(1.3130352854993313).epsilon(1e-12));

    CHECK(model::cost_of_trajectory(sinh_trajectory(201, 0.0)) ==
          doctest::Approx(reference).epsilon(1e-8));
    // 101 intervals is odd, which routes the tail through the 3/8 rule.
    CHECK(model::cost_of_trajectory(sinh_trajectory(102, 0.0)) ==
          doctest::Approx(reference).epsilon(1e-6));
}

TEST_CASE("permanent impact shifts cost by exactly gamma X^2 / 2") {
    const double base = model::cost_of_trajectory(sinh_trajectory(201, 0.0));
    const double shifted = model::cost_of_trajectory(sinh_trajectory(201, 2.0));
    CHECK(shifted - base == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cost of the empty schedule is zero") {
    Trajectory traj;
    traj.params = unit_params(1.0);
    traj.v0 = 0.0;
    for (int i = 0; i < 11; ++i) {
        traj.points.push_back({0.1 * i, 0.0, 0.0, 0.0});
    }
    // Exact zero, not merely small: every sample contributes nothing.
    CHECK(model::cost_of_trajectory(traj) == 0.0);
}

TEST_CASE("cost rejects undersampled or malformed trajectories") {
    Trajectory two;
    two.params = unit_params(1.0);
    two.points = {{0.0, 1.0, 1.0, 0.0}, {1.0, 0.0, 1.0, 0.0}};
    CHECK_THROWS_AS(model::cost_of_trajectory(two), InsufficientSamplesError);

    Trajectory warped = sinh_trajectory(11, 0.0);
    warped.points[5].t += 0.03;  // breaks uniform spacing
    CHECK_THROWS_AS(model::cost_of_trajectory(warped), std::invalid_argument);

    Trajectory rising = sinh_trajectory(11, 0.0);
    rising.points[4].x = rising.points[3].x + 0.2;  // holdings increase
    CHECK_THROWS_AS(model::cost_of_trajectory(rising), std::invalid_argument);

    Trajectory undrained = sinh_trajectory(11, 0.0);
    undrained.points.back().x = 0.4;  // fails terminal depletion
    CHECK_THROWS_AS(model::cost_of_trajectory(undrained), std::invalid_argument);
}
