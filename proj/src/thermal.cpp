#include "thermoqvi/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

double coercivity_margin(const Coefficients& coeffs, double sigma_inf) {
    if (sigma_inf < 0.0)
        throw std::invalid_argument("coercivity_margin: need sigma_inf >= 0");
    double m1 = coeffs.c1 - std::max(coeffs.b2 - coeffs.b1, 0.0) * sigma_inf / 4.0;
    double m2 = coeffs.c2 - std::max(coeffs.b1 - coeffs.b2, 0.0) * sigma_inf / 4.0;
    return std::min(m1, m2);
}

PairSolution solve_pair(const Grid& grid, const Coefficients& coeffs,
                        const ScalarField& h1, const ScalarField& h2,
                        const ScalarField& sigma, const SolverParams& params) {
    coeffs.validate();
    if (h1.grid != grid || h2.grid != grid || sigma.grid != grid)
        throw std::invalid_argument("solve_pair: grid mismatch");
    double sigma_max = sigma.max();
    if (sigma.min() < -1e-14 || sigma_max > 1.0 + 1e-14)
        throw std::invalid_argument("solve_pair: sigma must lie in [0,1]");
    if (!(coercivity_margin(coeffs, sigma_max) > 0.0))
        throw std::invalid_argument("solve_pair: coercivity margin not positive");

    const int nn = grid.node_count();
    auto w = node_weights(grid);

    // A_i = kappa_i*Stiff + diag(w (c_i + b_i sigma)); coupling moves to the rhs.
    auto reaction = [&](double c, double b) {
        ScalarField cf(grid);
        for (int i = 0; i < nn; ++i) cf.values[i] = c + b * sigma.values[i];
        return cf;
    };
    SparseMatrix A1 = assemble_neumann_helmholtz(grid, coeffs.kappa1, reaction(coeffs.c1, coeffs.b1));
    SparseMatrix A2 = assemble_neumann_helmholtz(grid, coeffs.kappa2, reaction(coeffs.c2, coeffs.b2));

    std::vector<double> wh1(nn), wh2(nn);
    for (int i = 0; i < nn; ++i) {
        wh1[i] = w[i] * h1.values[i];
        wh2[i] = w[i] * h2.values[i];
    }
    auto rhs1 = [&](const std::vector<double>& t2) {
        std::vector<double> b(nn);
        for (int i = 0; i < nn; ++i) b[i] = wh1[i] + w[i] * coeffs.b1 * sigma.values[i] * t2[i];
        return b;
    };
    auto rhs2 = [&](const std::vector<double>& t1) {
        std::vector<double> b(nn);
        for (int i = 0; i < nn; ++i) b[i] = wh2[i] + w[i] * coeffs.b2 * sigma.values[i] * t1[i];
        return b;
    };

    double scale = 0.0;
    for (int i = 0; i < nn; ++i)
        scale = std::max({scale, std::abs(wh1[i]), std::abs(wh2[i])});
    double target = params.pair_tol * (1.0 + scale * std::sqrt(static_cast<double>(nn)));

    PairSolution out;
    out.theta1 = ScalarField(grid);
    out.theta2 = ScalarField(grid);
    std::vector<double> t1(nn, 0.0), t2(nn, 0.0);

    auto residual = [&](const std::vector<double>& a, const std::vector<double>& b) {
        auto r1 = A1.multiply(a);
        auto r2 = A2.multiply(b);
        auto b1v = rhs1(b);
        auto b2v = rhs2(a);
        double s = 0.0;
        for (int i = 0; i < nn; ++i) {
            s += (r1[i] - b1v[i]) * (r1[i] - b1v[i]);
            s += (r2[i] - b2v[i]) * (r2[i] - b2v[i]);
        }
        return std::sqrt(s);
    };

    int sweeps = 0;
    double res = residual(t1, t2);
    while (res > target && sweeps < params.pair_max_outer) {
        auto s1 = cg_solve(A1, rhs1(t2), params.lin_tol, params.lin_max_iter, &t1);
        t1 = std::move(s1.x);
        auto s2 = cg_solve(A2, rhs2(t1), params.lin_tol, params.lin_max_iter, &t2);
        t2 = std::move(s2.x);
        ++sweeps;
        res = residual(t1, t2);
    }
    out.theta1.values = std::move(t1);
    out.theta2.values = std::move(t2);
    out.stats.iterations = sweeps;
    out.stats.residual = res;
    out.stats.converged = res <= target;
    return out;
}

std::pair<double, double> bounds_mM(const Coefficients& coeffs, const ScalarField& h1,
                                    const ScalarField& h2) {
    double m = std::min(h1.min() / coeffs.c1, h2.min() / coeffs.c2);
    double M = std::max(h1.max() / coeffs.c1, h2.max() / coeffs.c2);
    return {m, M};
}

ComparisonResult check_comparison(const ScalarField& theta1, const ScalarField& theta2,
                                  const Coefficients& coeffs, const ScalarField& h1,
                                  const ScalarField& h2) {
    ComparisonResult out;
    if (coeffs.c2 / coeffs.kappa2 < coeffs.c1 / coeffs.kappa1) return out;
    for (size_t i = 0; i < h1.values.size(); ++i) {
        double r1 = h1.values[i] / coeffs.kappa1;
        double r2 = h2.values[i] / coeffs.kappa2;
        if (r1 < r2 || r2 < 0.0) return out;
    }
    out.applicable = true;
    double v = 0.0;
    for (size_t i = 0; i < theta1.values.size(); ++i) {
        v = std::max(v, theta2.values[i] - theta1.values[i]);
        v = std::max(v, -theta2.values[i]);
    }
    out.violation = std::max(v, 0.0);
    return out;
}

double linfty_theta1_bound(const Coefficients& coeffs, const ScalarField& h1) {
    return h1.max_abs() / coeffs.c1;
}

double l1_dependence_slack(const PairSolution& sol, const PairSolution& sol_hat,
                           const ScalarField& h1, const ScalarField& h2,
                           const ScalarField& h1_hat, const ScalarField& h2_hat,
                           const ScalarField& sigma, const ScalarField& sigma_hat,
                           const Coefficients& coeffs) {
    double sig_hat_inf = std::max(sigma_hat.max_abs(), 0.0);
    double gamma1 = coeffs.c1 - std::max(coeffs.b2 - coeffs.b1, 0.0) * sig_hat_inf;
    double gamma2 = coeffs.c2 - std::max(coeffs.b1 - coeffs.b2, 0.0) * sig_hat_inf;
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw std::invalid_argument("l1_dependence_slack: need gamma1, gamma2 > 0");

    const Grid& grid = sol.theta1.grid;
    auto l1_diff = [&](const ScalarField& a, const ScalarField& b) {
        ScalarField d(grid);
        for (size_t i = 0; i < d.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
        return norm_l1(d);
    };
    auto [m, M] = bounds_mM(coeffs, h1, h2);
    double lhs = gamma1 * l1_diff(sol.theta1, sol_hat.theta1) +
                 gamma2 * l1_diff(sol.theta2, sol_hat.theta2);
    double rhs = l1_diff(h1, h1_hat) + l1_diff(h2, h2_hat) +
                 (M - m) * (coeffs.b1 + coeffs.b2) * l1_diff(sigma, sigma_hat);
    return rhs - lhs;
}

double conservation_residual(const ScalarField& theta1, const ScalarField& theta2,
                             const Coefficients& coeffs, const ScalarField& h1,
                             const ScalarField& h2, const ScalarField& sigma) {
    const Grid& grid = theta1.grid;
    auto w = node_weights(grid);
    double heat = 0.0, source = 0.0, exchange = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        heat += w[i] * (coeffs.c1 * theta1.values[i] + coeffs.c2 * theta2.values[i]);
        source += w[i] * (h1.values[i] + h2.values[i]);
        exchange += w[i] * sigma.values[i] * (theta1.values[i] - theta2.values[i]);
    }
    return heat - source - (coeffs.b2 - coeffs.b1) * exchange;
}

}  // namespace thermoqvi
