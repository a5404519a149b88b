#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "exechyper/errors.hpp"
#include "exechyper/specfun.hpp"

using namespace exechyper;
using specfun::Hyp2F1Method;

namespace {

// Reference values computed independently at 30-digit precision and frozen.
constexpr double kRef_m2 = 0.76047444853988559;    // 2F1(1/2,2/3;3/2;-2)
constexpr double kRef_m5 = 0.62117904758596416;    // 2F1(1/2,2/3;3/2;-5)
constexpr double kRef_mhalf = 0.91013186484368816; // 2F1(1/2,2/3;3/2;-0.5)
constexpr double kRef_b89_m50 = 0.22599626113065421;  // 2F1(1/2,8/9;3/2;-50)
constexpr double kRef_b19_m50 = 0.77827553288207711;  // 2F1(1/2,1/9;3/2;-50)
constexpr double kRef_deep = 1.1220101532281112e-4;   // 2F1(1/2,2/3;3/2;-1e9)
constexpr double kRef_pos = 1.0699323854033741;    // 2F1(0.3,0.7;1.9;0.5)
constexpr double kRef_arcsin = 1.2441883499984824; // 2F1(1/2,1/2;3/2;0.81)

}  // namespace

TEST_CASE("pochhammer basic values") {
    CHECK(specfun::pochhammer(3.0, 0) == 1.0);
    CHECK(specfun::pochhammer(3.0, 2) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(specfun::pochhammer(0.5, 3) == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(specfun::pochhammer(-2.0, 3) == 0.0);  // hits the zero factor
}

TEST_CASE("pochhammer satisfies the rising recurrence") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> xs(-5.0, 5.0);
    std::uniform_int_distribution<unsigned> ns(0, 20);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = xs(rng);
        const unsigned n = ns(rng);
        const double lhs = specfun::pochhammer(x, n + 1);
        const double rhs = specfun::pochhammer(x, n) * (x + n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("gamma_fn on integers, half-integers, and its domain") {
    CHECK(specfun::gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(specfun::gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(specfun::gamma_fn(0.5) == doctest::Approx(1.7724538509).epsilon(1e-10));
    CHECK_THROWS_AS(specfun::gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("gamma_fn matches direct integration of the defining integral") {
    // integral of exp(-u) u^(x-1) du over (0, inf); substituting u = s^2
    // removes the endpoint singularity for x >= 1/2. Composite Simpson on
    // [0, 12] is far inside 1e-10 for these arguments.
    const auto gamma_by_integral = [](double x) {
        const int n = 48000;  // interval count, even
        const double hi = 12.0;
        const double h = hi / n;
        double acc = 0.0;
        const auto f = [x](double s) {
            return 2.0 * std::exp(-s * s) * std::pow(s, 2.0 * x - 1.0);
        };
        for (int i = 0; i + 2 <= n; i += 2) {
            acc += h / 3.0 * (f(i * h) + 4.0 * f((i + 1) * h) + f((i + 2) * h));
        }
        return acc;
    };
    for (const double x : {0.5, 1.0, 1.5, 2.5, 4.0, 7.5}) {
        CHECK(specfun::gamma_fn(x) ==
              doctest::Approx(gamma_by_integral(x)).epsilon(1e-11));
    }
}

TEST_CASE("hyp2f1 is exactly one at t = 0") {
    for (const double b : {0.1, 0.5, 1.0 / 3.0, 0.9}) {
        const auto eval = specfun::hyp2f1({0.5, b, 1.5, 0.0});
        CHECK(eval.value == 1.0);
        CHECK(eval.estimated_error == 0.0);
    }
}

TEST_CASE("hyp2f1 reproduces frozen reference values") {
    SUBCASE("direct series, moderate negative argument") {
        const auto eval = specfun::hyp2f1({0.5, 2.0 / 3.0, 1.5, -0.5});
        CHECK(eval.method == Hyp2F1Method::DirectSeries);
        CHECK(eval.value == doctest::Approx(kRef_mhalf).epsilon(1e-14));
    }
    SUBCASE("direct series, positive argument") {
        const auto eval = specfun::hyp2f1({0.3, 0.7, 1.9, 0.5});
        CHECK(eval.method == Hyp2F1Method::DirectSeries);
        CHECK(eval.value == doctest::Approx(kRef_pos).epsilon(1e-14));
        const auto arcsin = specfun::hyp2f1({0.5, 0.5, 1.5, 0.81});
        CHECK(arcsin.value == doctest::Approx(kRef_arcsin).epsilon(1e-13));
        CHECK(arcsin.value == doctest::Approx(std::asin(0.9) / 0.9).epsilon(1e-13));
    }
    SUBCASE("transformed series past t = -1") {
        const auto at_m2 = specfun::hyp2f1({0.5, 2.0 / 3.0, 1.5, -2.0});
        CHECK(at_m2.method == Hyp2F1Method::PfaffSeries);
        CHECK(at_m2.value == doctest::Approx(kRef_m2).epsilon(1e-13));

        const auto at_m5 = specfun::hyp2f1({0.5, 2.0 / 3.0, 1.5, -5.0});
        CHECK(at_m5.value == doctest::Approx(kRef_m5).epsilon(1e-13));

        CHECK(specfun::hyp2f1({0.5, 8.0 / 9.0, 1.5, -50.0}).value ==
              doctest::Approx(kRef_b89_m50).epsilon(1e-13));
        CHECK(specfun::hyp2f1({0.5, 1.0 / 9.0, 1.5, -50.0}).value ==
              doctest::Approx(kRef_b19_m50).epsilon(1e-13));
    }
    SUBCASE("boundary t = -1 equals arcsinh(1)") {
        const auto eval = specfun::hyp2f1({0.5, 0.5, 1.5, -1.0});
        CHECK(eval.method == Hyp2F1Method::PfaffSeries);
        CHECK(eval.value == doctest::Approx(std::asinh(1.0)).epsilon(1e-13));
    }
}

TEST_CASE("hyp2f1 reports its work honestly") {
    const auto eval = specfun::hyp2f1({0.5, 2.0 / 3.0, 1.5, -2.0});
    CHECK(eval.terms_used > 1);
    CHECK(eval.terms_used <= specfun::kMaxSeriesTerms);
    CHECK(eval.estimated_error >= 0.0);
    CHECK(eval.estimated_error < 1e-10);
    CHECK(std::abs(eval.value - kRef_m2) <= std::max(eval.estimated_error, 5e-15));
}

TEST_CASE("hyp2f1 is symmetric in its first two parameters, bit for bit") {
    const std::vector<std::pair<double, double>> abs = {
        {0.5, 2.0 / 3.0}, {0.9, 0.1}, {1.7, 0.4}};
    for (const auto& [a, b] : abs) {
        for (const double t : {-7.0, -1.0, -0.3, 0.0, 0.6}) {
            const auto fwd = specfun::hyp2f1({a, b, 1.5, t});
            const auto rev = specfun::hyp2f1({b, a, 1.5, t});
            CHECK(fwd.value == rev.value);
            CHECK(fwd.method == rev.method);
        }
    }
}

TEST_CASE("hyp2f1 collapses to arcsinh for the k = 1 parameter set") {
    for (int j = 1; j <= 50; ++j) {
        const double z = 0.2 * j;  // covers (0, 10]
        const auto eval = specfun::hyp2f1({0.5, 0.5, 1.5, -z * z});
        CHECK(std::abs(eval.value - std::asinh(z) / z) < 1e-10);
    }
}

TEST_CASE("series and quadrature routes agree across the solver's argument range") {
    for (const double k : {0.125, 0.5, 1.0, 2.0, 8.0}) {
        const double b = 1.0 / (k + 1.0);
        for (const double t : {-50.0, -10.0, -5.0, -1.0, -0.5, -0.01, 0.0}) {
            const auto series = specfun::hyp2f1({0.5, b, 1.5, t});
            // The comparison only means something while the routes differ.
            CHECK(series.method != Hyp2F1Method::Quadrature);
            const double quad = specfun::hyp2f1_quadrature({0.5, b, 1.5, t});
            CHECK(std::abs(series.value - quad) < 1e-8);
        }
    }
}

TEST_CASE("series budget exhaustion falls back to quadrature when valid") {
    const auto eval = specfun::hyp2f1({0.5, 2.0 / 3.0, 1.5, -1e9});
    CHECK(eval.method == Hyp2F1Method::Quadrature);
    CHECK(eval.value == doctest::Approx(kRef_deep).epsilon(1e-8));
}

TEST_CASE("hyp2f1 raises no-convergence when no route can finish") {
    // min(a, b) <= 0 rules the integral route out, and at this argument the
    // transformed series cannot reach the cutoff within the term budget.
    CHECK_THROWS_AS(specfun::hyp2f1({-0.3, 0.7, 1.5, -1e12}), NoConvergenceError);
}

TEST_CASE("hyp2f1 rejects invalid (c, t)") {
    CHECK_THROWS_AS(specfun::hyp2f1({0.5, 0.5, 0.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(specfun::hyp2f1({0.5, 0.5, -2.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(specfun::hyp2f1({0.5, 0.5, 1.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(specfun::hyp2f1({0.5, 0.5, 1.5, 2.0}), std::domain_error);
    CHECK_NOTHROW(specfun::hyp2f1({0.5, 0.5, -1.5, 0.25}));  // negative non-integer c is fine
}

TEST_CASE("hyp2f1_quadrature enforces its integral preconditions") {
    CHECK_THROWS_AS(specfun::hyp2f1_quadrature({2.0, 0.5, 1.5, -1.0}), std::domain_error);
    CHECK_THROWS_AS(specfun::hyp2f1_quadrature({-0.5, 0.5, 1.5, -1.0}), std::domain_error);
    CHECK_THROWS_AS(specfun::hyp2f1_quadrature({0.5, 0.5, 1.5, 1.5}), std::domain_error);
}

TEST_CASE("hyp2f1_quadrature frozen values and normalization") {
    CHECK(specfun::hyp2f1_quadrature({0.5, 2.0 / 3.0, 1.5, -2.0}) ==
          doctest::Approx(kRef_m2).epsilon(1e-11));
    CHECK(specfun::hyp2f1_quadrature({0.5, 2.0 / 3.0, 1.5, -5.0}) ==
          doctest::Approx(kRef_m5).epsilon(1e-11));
    CHECK(specfun::hyp2f1_quadrature({0.5, 0.5, 1.5, -1.0}) ==
          doctest::Approx(std::asinh(1.0)).epsilon(1e-11));
    for (const double k : {0.125, 1.0, 8.0}) {
        CHECK(specfun::hyp2f1_quadrature({0.5, 1.0 / (k + 1.0), 1.5, 0.0}) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}
