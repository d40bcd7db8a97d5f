#include <doctest.h>

#include <cmath>
#include <random>

#include "thermoqvi/thermal.hpp"

using namespace thermoqvi;

namespace {

Coefficients benchmark_coeffs() {
    Coefficients c;
    c.kappa1 = c.kappa2 = 1.0;
    c.c1 = c.c2 = 1.0;
    c.b1 = c.b2 = 1.0;
    c.alpha = 1.0;
    return c;
}

}  // namespace

TEST_CASE("coercivity margin formula") {
    Coefficients c;
    SUBCASE("equal exchange coefficients: margin is min(c1, c2)") {
        c.c1 = c.c2 = 1.0;
        c.b1 = c.b2 = 9.0;
        CHECK(coercivity_margin(c, 1.0) == doctest::Approx(1.0));
        CHECK(coercivity_margin(c, 0.3) == doctest::Approx(1.0));
    }
    SUBCASE("imbalance eats the margin") {
        c.c1 = 1.0;
        c.c2 = 1.0;
        c.b1 = 5.0;
        c.b2 = 1.0;
        CHECK(coercivity_margin(c, 1.0) == doctest::Approx(0.0));
    }
    SUBCASE("direct evaluation") {
        c.c1 = 2.0;
        c.c2 = 4.0;
        c.b1 = 0.0;
        c.b2 = 12.0;
        CHECK(coercivity_margin(c, 0.5) == doctest::Approx(0.5));
    }
}

TEST_CASE("bounds_mM formula") {
    Grid g = build_grid(1, 8);
    Coefficients c;
    SUBCASE("constants") {
        c.c1 = 4.0;
        c.c2 = 1.0;
        auto [m, M] = bounds_mM(c, ScalarField::constant(g, 2.0), ScalarField::constant(g, 3.0));
        CHECK(m == doctest::Approx(0.5));
        CHECK(M == doctest::Approx(3.0));
    }
    SUBCASE("zero data") {
        auto [m, M] = bounds_mM(c, ScalarField::constant(g, 0.0), ScalarField::constant(g, 0.0));
        CHECK(m == 0.0);
        CHECK(M == 0.0);
    }
    SUBCASE("ramp") {
        c.c1 = 2.0;
        c.c2 = 1.0;
        auto h1 = ScalarField::from_fn(g, [](double x, double) { return 4.0 * x; });
        auto [m, M] = bounds_mM(c, h1, ScalarField::constant(g, 1.0));
        CHECK(m == doctest::Approx(0.0));
        CHECK(M == doctest::Approx(2.0));
    }
}

TEST_CASE("solve_pair: decoupled constant solution") {
    Grid g = build_grid(1, 8);
    Coefficients c;
    c.c1 = 4.0;
    c.c2 = 1.0;
    c.b1 = c.b2 = 3.0;
    auto sol = solve_pair(g, c, ScalarField::constant(g, 2.0), ScalarField::constant(g, 0.0),
                          ScalarField::constant(g, 0.0));
    REQUIRE(sol.stats.converged);
    for (double v : sol.theta1.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
    for (double v : sol.theta2.values) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("solve_pair: full-exchange algebraic 2x2 solution") {
    // c1=c2=b1=b2=1, sigma=1, h1=3, h2=0: 2 t1 - t2 = 3, 2 t2 = t1
    for (int dim : {1, 2}) {
        Grid g = build_grid(dim, dim == 1 ? 16 : 8);
        Coefficients c = benchmark_coeffs();
        auto sol = solve_pair(g, c, ScalarField::constant(g, 3.0), ScalarField::constant(g, 0.0),
                              ScalarField::constant(g, 1.0));
        REQUIRE(sol.stats.converged);
        for (double v : sol.theta1.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
        for (double v : sol.theta2.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("solve_pair: rejects a violated coercivity margin") {
    Grid g = build_grid(1, 8);
    Coefficients c;
    c.c1 = 1.0;
    c.c2 = 1.0;
    c.b1 = 9.0;
    c.b2 = 1.0;  // margin 1 - 8/4 = -1 at sigma=1
    CHECK_THROWS_AS(solve_pair(g, c, ScalarField::constant(g, 1.0),
                               ScalarField::constant(g, 0.0), ScalarField::constant(g, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("solve_pair: m/M sandwich for varying data") {
    Grid g = build_grid(1, 16);
    Coefficients c = benchmark_coeffs();
    auto h1 = ScalarField::from_fn(g, [](double x, double) { return 2.0 + std::sin(7.0 * x); });
    auto h2 = ScalarField::constant(g, 0.0);
    auto sigma = ScalarField::from_fn(g, [](double x, double) { return x < 0.5 ? 1.0 : 0.0; });
    auto sol = solve_pair(g, c, h1, h2, sigma);
    REQUIRE(sol.stats.converged);
    auto [m, M] = bounds_mM(c, h1, h2);
    for (const ScalarField* t : {&sol.theta1, &sol.theta2}) {
        CHECK(t->min() >= m - 1e-9);
        CHECK(t->max() <= M + 1e-9);
    }
    // difference bound, a consequence of the sandwich
    for (size_t i = 0; i < sol.theta1.values.size(); ++i)
        CHECK(std::abs(sol.theta1.values[i] - sol.theta2.values[i]) <= (M - m) + 1e-9);
}

TEST_CASE("solve_pair: conservation identity") {
    Grid g = build_grid(2, 8);
    Coefficients c;
    c.c1 = 1.5;
    c.c2 = 0.75;
    c.b1 = 0.25;
    c.b2 = 2.0;
    auto h1 = ScalarField::from_fn(g, [](double x, double y) { return 1.0 + x * y; });
    auto h2 = ScalarField::from_fn(g, [](double x, double y) { return 0.5 * (x + y); });
    auto sigma = ScalarField::from_fn(g, [](double x, double) { return 0.5 + 0.5 * x; });
    auto sol = solve_pair(g, c, h1, h2, sigma);
    REQUIRE(sol.stats.converged);
    double r = conservation_residual(sol.theta1, sol.theta2, c, h1, h2, sigma);
    CHECK(std::abs(r) < 1e-9 * (1.0 + 2.0));
}

TEST_CASE("solve_pair: nonnegativity for signed data") {
    Grid g = build_grid(1, 16);
    Coefficients c = benchmark_coeffs();
    auto h1 = ScalarField::from_fn(g, [](double x, double) { return x; });
    auto h2 = ScalarField::from_fn(g, [](double x, double) { return 0.25 * (1.0 - x); });
    auto sigma = ScalarField::constant(g, 1.0);
    auto sol = solve_pair(g, c, h1, h2, sigma);
    REQUIRE(sol.stats.converged);
    CHECK(sol.theta1.min() >= -1e-10);
    CHECK(sol.theta2.min() >= -1e-10);
}

TEST_CASE("comparison principle") {
    Grid g = build_grid(1, 16);
    SUBCASE("algebraic example satisfies it with violation 0") {
        Coefficients c = benchmark_coeffs();
        auto h1 = ScalarField::constant(g, 3.0);
        auto h2 = ScalarField::constant(g, 0.0);
        auto sol = solve_pair(g, c, h1, h2, ScalarField::constant(g, 1.0));
        auto cmp = check_comparison(sol.theta1, sol.theta2, c, h1, h2);
        REQUIRE(cmp.applicable);
        CHECK(cmp.violation < 1e-9);
    }
    SUBCASE("identical data forces theta1 = theta2") {
        Coefficients c = benchmark_coeffs();
        auto h = ScalarField::from_fn(g, [](double x, double) { return 1.0 + x; });
        auto sigma = ScalarField::from_fn(g, [](double x, double) { return 0.3 + 0.5 * x; });
        auto sol = solve_pair(g, c, h, h, sigma);
        auto cmp = check_comparison(sol.theta1, sol.theta2, c, h, h);
        REQUIRE(cmp.applicable);
        CHECK(cmp.violation < 1e-9);
        CHECK(max_abs_diff(sol.theta1, sol.theta2) < 1e-9);
    }
    SUBCASE("random admissible data never violates") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Grid g16 = build_grid(1, 16);
        for (int trial = 0; trial < 5; ++trial) {
            Coefficients c;
            c.kappa1 = 0.5 + unit(rng);
            c.kappa2 = c.kappa1;  // with c2 >= c1 this keeps c2/k2 >= c1/k1
            c.c1 = 0.5 + unit(rng);
            c.c2 = c.c1 + unit(rng);
            c.b1 = unit(rng);
            c.b2 = unit(rng);
            ScalarField h2 = ScalarField::from_fn(
                g16, [&](double, double) { return unit(rng); });
            ScalarField h1(g16);
            double ratio = c.kappa1 / c.kappa2;
            for (int i = 0; i < g16.node_count(); ++i)
                h1.values[i] = h2.values[i] * ratio + unit(rng);
            ScalarField sigma = ScalarField::from_fn(
                g16, [&](double, double) { return unit(rng); });
            if (!(coercivity_margin(c, 1.0) > 0.0)) continue;
            auto sol = solve_pair(g16, c, h1, h2, sigma);
            REQUIRE(sol.stats.converged);
            auto cmp = check_comparison(sol.theta1, sol.theta2, c, h1, h2);
            REQUIRE(cmp.applicable);
            CHECK(cmp.violation <= 1e-8);
        }
    }
    SUBCASE("precondition violation returns inapplicable") {
        Coefficients c;
        c.c1 = 2.0;
        c.c2 = 1.0;  // c2/k2 < c1/k1
        auto h1 = ScalarField::constant(g, 1.0);
        auto h2 = ScalarField::constant(g, 0.0);
        auto cmp = check_comparison(ScalarField::constant(g, 0.0),
                                    ScalarField::constant(g, 0.0), c, h1, h2);
        CHECK(!cmp.applicable);
    }
}

TEST_CASE("sup bound for theta1") {
    Grid g = build_grid(1, 8);
    Coefficients c;
    SUBCASE("constant") {
        c.c1 = 1.0;
        CHECK(linfty_theta1_bound(c, ScalarField::constant(g, 3.0)) == doctest::Approx(3.0));
    }
    SUBCASE("zero") {
        CHECK(linfty_theta1_bound(c, ScalarField::constant(g, 0.0)) == doctest::Approx(0.0));
    }
    SUBCASE("ramp") {
        c.c1 = 2.0;
        auto h1 = ScalarField::from_fn(g, [](double x, double) { return 4.0 * x; });
        CHECK(linfty_theta1_bound(c, h1) == doctest::Approx(2.0));
    }
    SUBCASE("solved theta1 stays below the bound when comparison applies") {
        Coefficients cb = benchmark_coeffs();
        auto h1 = ScalarField::constant(g, 3.0);
        auto h2 = ScalarField::constant(g, 0.0);
        auto sol = solve_pair(g, cb, h1, h2, ScalarField::constant(g, 1.0));
        CHECK(sol.theta1.max() <= linfty_theta1_bound(cb, h1) + 1e-9);
    }
}

TEST_CASE("L1 continuous dependence slack") {
    Grid g = build_grid(1, 32);
    Coefficients c = benchmark_coeffs();
    auto h1 = ScalarField::constant(g, 3.0);
    auto h2 = ScalarField::constant(g, 0.0);
    auto sigma = ScalarField::from_fn(g, [](double x, double) { return x < 0.5 ? 1.0 : 0.0; });
    auto sol = solve_pair(g, c, h1, h2, sigma);

    SUBCASE("identical data: both sides vanish") {
        double slack = l1_dependence_slack(sol, sol, h1, h2, h1, h2, sigma, sigma, c);
        CHECK(slack == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("shifted h1") {
        ScalarField h1_hat = ScalarField::constant(g, 3.01);
        auto sol_hat = solve_pair(g, c, h1_hat, h2, sigma);
        double slack = l1_dependence_slack(sol, sol_hat, h1, h2, h1_hat, h2, sigma, sigma, c);
        CHECK(slack >= -1e-9);
    }
    SUBCASE("sigma flipped on half the domain") {
        auto sigma_hat = ScalarField::constant(g, 1.0);
        auto sol_hat = solve_pair(g, c, h1, h2, sigma_hat);
        double slack = l1_dependence_slack(sol, sol_hat, h1, h2, h1, h2, sigma, sigma_hat, c);
        CHECK(slack >= -1e-9);
    }
    SUBCASE("random joint perturbations keep the slack nonnegative") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            ScalarField h1_hat(g), sigma_hat(g);
            for (int i = 0; i < g.node_count(); ++i) {
                h1_hat.values[i] = h1.values[i] + 0.1 * unit(rng);
                sigma_hat.values[i] = unit(rng);
            }
            auto sol_hat = solve_pair(g, c, h1_hat, h2, sigma_hat);
            double slack =
                l1_dependence_slack(sol, sol_hat, h1, h2, h1_hat, h2, sigma, sigma_hat, c);
            CHECK(slack >= -1e-9);
        }
    }
}
