#include "exechyper/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "exechyper/errors.hpp"

namespace exechyper::model {

void ModelParams::validate() const {
    const auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!std::isfinite(gamma) || gamma < 0.0) fail("gamma must be finite and >= 0");
    if (!std::isfinite(eta) || eta <= 0.0) fail("eta must be finite and > 0");
    if (!std::isfinite(lam) || lam <= 0.0) fail("lambda must be finite and > 0");
    if (!std::isfinite(sigma) || sigma <= 0.0) fail("sigma must be finite and > 0");
    if (!std::isfinite(k) || k <= 0.0) fail("k must be finite and > 0");
    if (!std::isfinite(X) || X <= 0.0) fail("X must be finite and > 0");
    if (!std::isfinite(T) || T <= 0.0) fail("T must be finite and > 0");
}

double ModelParams::speed_coupling() const {
    return lam * sigma * sigma / (k * eta);
}

void Trajectory::validate() const {
    const auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (points.size() < 2) fail("trajectory needs at least two samples");
    const double h = points[1].t - points[0].t;
    if (!(h > 0.0)) fail("trajectory samples must be strictly increasing in t");
    const double slack = 1e-9 * std::max(1.0, params.T);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (pt.t < -slack || pt.t > params.T + slack) fail("sample time outside [0, T]");
        if (pt.x < -slack) fail("holdings must be non-negative");
        if (pt.v < 0.0) fail("trading speed must be non-negative");
        if (i > 0) {
            const double dt = pt.t - points[i - 1].t;
            if (!(dt > 0.0)) fail("trajectory samples must be strictly increasing in t");
            if (std::abs(dt - h) > slack) fail("trajectory grid must be uniform");
            if (pt.x > points[i - 1].x + slack) fail("holdings must be non-increasing");
        }
    }
    if (std::abs(points.front().t) > slack) fail("trajectory must start at t = 0");
    if (std::abs(points.back().t - params.T) > slack) fail("trajectory must end at t = T");
    if (std::abs(points.back().x) > 1e-6 * std::max(1.0, params.X)) {
        fail("trajectory must deplete holdings at t = T");
    }
}

double impact_integrand(const ModelParams& p, double x, double xdot) {
    if (xdot > 0.0) {
        throw std::domain_error("impact_integrand: buying (xdot > 0) is outside the model");
    }
    const double v = -xdot;
    return -p.gamma * x * xdot + p.eta * std::pow(v, p.k + 1.0) +
           p.lam * p.sigma * p.sigma * x * x;
}

double beltrami_constant(const ModelParams& p, double x, double v) {
    return p.lam * p.sigma * p.sigma * x * x - p.k * p.eta * std::pow(v, p.k + 1.0);
}

double legendre_check(const ModelParams& p, double v) {
    // pow(0, k-1) yields +inf for k < 1 and 1 for k == 1, both intended.
    return p.eta * p.k * (p.k + 1.0) * std::pow(v, p.k - 1.0);
}

double cost_of_trajectory(const Trajectory& traj) {
    const auto& pts = traj.points;
    if (pts.size() < 3) {
        throw InsufficientSamplesError("cost_of_trajectory: needs at least 3 samples");
    }
    traj.validate();

    const std::size_t n = pts.size();
    const double h = (pts.back().t - pts.front().t) / static_cast<double>(n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = impact_integrand(traj.params, pts[i].x, -pts[i].v);
    }

    // Composite Simpson over an even number of intervals; when the interval
    // count is odd, close with the 3/8 rule over the final three.
    std::size_t intervals = n - 1;
    std::size_t simpson_end = intervals;  // index one past the Simpson block
    double tail = 0.0;
    if (intervals % 2 != 0) {
        simpson_end = intervals - 3;
        const std::size_t j = n - 4;
        tail = 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
    return acc + tail;
}

}  // namespace exechyper::model
