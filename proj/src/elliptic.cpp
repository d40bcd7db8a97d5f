#include "thermoqvi/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

double chi_eps(double s, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("chi_eps: need eps > 0");
    return std::clamp(1.0 - s / eps, 0.0, 1.0);
}

double RegSchedule::resolved_eps_min(const Grid& grid) const {
    return eps_min > 0.0 ? eps_min : grid.h * grid.h;
}

std::vector<double> RegSchedule::stages(const Grid& grid) const {
    if (!(factor > 0.0) || !(factor < 1.0))
        throw std::invalid_argument("RegSchedule: need factor in (0,1)");
    double lo = resolved_eps_min(grid);
    if (!(eps0 > 0.0) || !(lo > 0.0) || eps0 < lo)
        throw std::invalid_argument("RegSchedule: need eps0 >= eps_min > 0");
    std::vector<double> out;
    double eps = eps0;
    while (eps > lo * (1.0 + 1e-12)) {
        out.push_back(eps);
        eps *= factor;
    }
    out.push_back(lo);
    return out;
}

namespace {

ScalarField relaxed_exchange(const ScalarField& w, const ScalarField& phi, double eps) {
    ScalarField sigma(w.grid);
    for (size_t i = 0; i < sigma.values.size(); ++i)
        sigma.values[i] = chi_eps(phi.values[i] - w.values[i], eps);
    return sigma;
}

}  // namespace

EllipticState fixed_point_solve(const Grid& grid, const Coefficients& coeffs,
                                const Sources& src, double eps,
                                const SolverParams& params, const ContactParams& contact,
                                const EllipticState* start) {
    coeffs.validate();
    if (!(coercivity_margin(coeffs, 1.0) > 0.0))
        throw std::invalid_argument("fixed_point_solve: coercivity constant c0 not positive");
    if (!(params.fp_damping > 0.0) || params.fp_damping > 1.0)
        throw std::invalid_argument("fixed_point_solve: damping must lie in (0,1]");

    EllipticState state;
    ScalarField w = start ? start->u : ScalarField::constant(grid, 0.0, FieldKind::zero_trace);
    ScalarField phi = start ? start->phi : ScalarField::constant(grid, 0.0, FieldKind::zero_trace);

    double damping = params.fp_damping;
    double prev_update = std::numeric_limits<double>::infinity();
    ContactParams membrane_params = contact;
    membrane_params.tol = params.psor_tol;
    membrane_params.max_iter = params.psor_max_iter;
    membrane_params.omega = params.omega;

    bool converged = false;
    int sweep = 0;
    double update = 0.0;
    for (; sweep < params.fp_max_outer; ++sweep) {
        ScalarField sigma = relaxed_exchange(w, phi, eps);
        PairSolution pair = solve_pair(grid, coeffs, src.h1, src.h2, sigma, params);
        ScalarField phi_new =
            solve_mould(grid, coeffs.alpha, pair.theta1, pair.theta2, sigma, src.g, params);
        ScalarField u_new = solve_membrane(grid, coeffs, pair.theta1, src.f, phi_new, membrane_params);

        update = std::max(max_abs_diff(u_new, w), max_abs_diff(phi_new, phi));
        state.theta1 = std::move(pair.theta1);
        state.theta2 = std::move(pair.theta2);
        state.chi_relaxed = std::move(sigma);

        if (update <= params.fp_tol) {
            w = std::move(u_new);
            phi = std::move(phi_new);
            ++sweep;
            converged = true;
            break;
        }
        // safeguard: the map is not provably contractive, so back off when
        // the update norm grows
        if (update > prev_update && damping > 1.0 / 64.0) damping *= 0.5;
        prev_update = update;
        for (size_t i = 0; i < w.values.size(); ++i) {
            w.values[i] += damping * (u_new.values[i] - w.values[i]);
            phi.values[i] += damping * (phi_new.values[i] - phi.values[i]);
        }
    }

    state.u = std::move(w);
    state.phi = std::move(phi);
    state.delta_contact = contact.resolved_delta(grid, src.f.max_abs(), coeffs.a.lambda1());
    state.chi = contact_set(state.u, state.phi, state.delta_contact);
    state.report.converged = converged;
    state.report.residual = update;
    state.report.eps_reached = eps;
    state.report.total_sweeps = sweep;
    state.report.damping_used = damping;
    state.report.stages.push_back({eps, sweep, update, converged});
    return state;
}

EllipticState continuation_solve(const Grid& grid, const Coefficients& coeffs,
                                 const Sources& src, const RegSchedule& schedule,
                                 const SolverParams& params, const ContactParams& contact,
                                 const EllipticState* start) {
    auto stages = schedule.stages(grid);
    EllipticState state;
    const EllipticState* warm = start;
    std::vector<StageInfo> history;
    for (double eps : stages) {
        state = fixed_point_solve(grid, coeffs, src, eps, params, contact, warm);
        history.push_back(state.report.stages.front());
        warm = &state;
    }
    state.report.stages = std::move(history);
    state.report.total_sweeps = 0;
    for (const auto& s : state.report.stages) state.report.total_sweeps += s.sweeps;
    return state;
}

NondegeneracyReport nondegeneracy_check(const EllipticState& state,
                                        const Coefficients& coeffs, const Sources& src) {
    NondegeneracyReport rep;
    const Grid& grid = state.theta1.grid;

    bool preconditions = coeffs.c2 / coeffs.kappa2 >= coeffs.c1 / coeffs.kappa1;
    for (size_t i = 0; preconditions && i < src.h1.values.size(); ++i) {
        double r1 = src.h1.values[i] / coeffs.kappa1;
        double r2 = src.h2.values[i] / coeffs.kappa2;
        if (r1 < r2 || r2 < 0.0) preconditions = false;
    }

    // (a) direct: f - A_theta phi at interior nodes
    {
        SparseMatrix A = assemble_atheta(grid, coeffs.a, state.theta1);
        auto Ap = A.multiply(restrict_interior(state.phi));
        auto fi = restrict_interior(src.f);
        double lo = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < fi.size(); ++k) lo = std::min(lo, fi[k] - Ap[k]);
        rep.pointwise.applicable = preconditions;
        rep.pointwise.lhs = lo;
        rep.pointwise.rhs = 0.0;
        rep.pointwise.margin = lo;
    }

    // (b) a-priori sufficient condition on the data
    {
        auto [m, M] = bounds_mM(coeffs, src.h1, src.h2);
        double l1 = coeffs.a.lambda1(), l2 = coeffs.a.lambda2();
        double lhs = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < src.f.values.size(); ++i) {
            double gp = std::max(src.g.values[i], 0.0);
            double gn = std::max(-src.g.values[i], 0.0);
            lhs = std::min(lhs, src.f.values[i] - l2 * gp + l1 * gn);
        }
        double k_grad = coeffs.a.is_constant() ? 0.0 : max_grad_dot(state.theta1, state.phi);
        double rhs = coeffs.alpha * l2 * (M - m) + coeffs.a.lip() * k_grad;
        rep.sufficient.applicable = preconditions;
        rep.sufficient.lhs = lhs;
        rep.sufficient.rhs = rhs;
        rep.sufficient.margin = lhs - rhs;
        rep.sufficient.k_grad = k_grad;
    }
    return rep;
}

ConditionReport uniqueness_check(const Coefficients& coeffs, const ScalarField& f,
                                 const ScalarField& g, double m, double M) {
    ConditionReport rep;
    double gamma0 = std::min(coeffs.c1 - std::max(coeffs.b2 - coeffs.b1, 0.0),
                             coeffs.c2 - std::max(coeffs.b1 - coeffs.b2, 0.0));
    if (!coeffs.a.is_constant() || !(gamma0 > 0.0)) return rep;
    double a = coeffs.a.lambda1();
    double lhs = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < f.values.size(); ++i)
        lhs = std::min(lhs, f.values[i] - a * g.values[i]);
    rep.applicable = true;
    rep.lhs = lhs;
    rep.rhs = a * coeffs.alpha * (M - m) * (2.0 + (coeffs.b1 + coeffs.b2) / gamma0);
    rep.margin = rep.lhs - rep.rhs;
    return rep;
}

double cross_solution_agreement(const Grid& grid, const Coefficients& coeffs,
                                const Sources& src, const RegSchedule& schedule,
                                const SolverParams& params, const ContactParams& contact) {
    EllipticState from_zero = continuation_solve(grid, coeffs, src, schedule, params, contact);

    // second start: temperatures at full exchange, mould from them, membrane
    // unconstrained
    EllipticState seed;
    ScalarField ones = ScalarField::constant(grid, 1.0);
    PairSolution pair = solve_pair(grid, coeffs, src.h1, src.h2, ones, params);
    seed.phi = solve_mould(grid, coeffs.alpha, pair.theta1, pair.theta2, ones, src.g, params);
    ScalarField free_obstacle = ScalarField::constant(grid, kNoBound);
    ContactParams mp = contact;
    mp.tol = params.psor_tol;
    mp.max_iter = params.psor_max_iter;
    mp.omega = params.omega;
    seed.u = solve_membrane(grid, coeffs, pair.theta1, src.f, free_obstacle, mp);

    EllipticState from_seed = continuation_solve(grid, coeffs, src, schedule, params, contact, &seed);

    double d = 0.0;
    d = std::max(d, max_abs_diff(from_zero.theta1, from_seed.theta1));
    d = std::max(d, max_abs_diff(from_zero.theta2, from_seed.theta2));
    d = std::max(d, max_abs_diff(from_zero.phi, from_seed.phi));
    d = std::max(d, max_abs_diff(from_zero.u, from_seed.u));
    return d;
}

double state_equation_residual(const EllipticState& state, const Coefficients& coeffs,
                               const Sources& src) {
    const Grid& grid = state.theta1.grid;
    const ScalarField& sigma = state.chi_relaxed;
    auto w = node_weights(grid);
    const int nn = grid.node_count();

    double worst = 0.0;
    // temperature equations, in the weighted form the solver uses
    {
        ScalarField r1(grid), r2(grid);
        for (int i = 0; i < nn; ++i) {
            r1.values[i] = coeffs.c1 + coeffs.b1 * sigma.values[i];
            r2.values[i] = coeffs.c2 + coeffs.b2 * sigma.values[i];
        }
        SparseMatrix A1 = assemble_neumann_helmholtz(grid, coeffs.kappa1, r1);
        SparseMatrix A2 = assemble_neumann_helmholtz(grid, coeffs.kappa2, r2);
        auto y1 = A1.multiply(state.theta1.values);
        auto y2 = A2.multiply(state.theta2.values);
        double s1 = 0.0, s2 = 0.0, n1 = 0.0, n2 = 0.0;
        for (int i = 0; i < nn; ++i) {
            double b1 = w[i] * (src.h1.values[i] +
                                coeffs.b1 * sigma.values[i] * state.theta2.values[i]);
            double b2 = w[i] * (src.h2.values[i] +
                                coeffs.b2 * sigma.values[i] * state.theta1.values[i]);
            s1 += (y1[i] - b1) * (y1[i] - b1);
            s2 += (y2[i] - b2) * (y2[i] - b2);
            n1 += b1 * b1;
            n2 += b2 * b2;
        }
        worst = std::max(worst, std::sqrt(s1) / (1.0 + std::sqrt(n1)));
        worst = std::max(worst, std::sqrt(s2) / (1.0 + std::sqrt(n2)));
    }
    // mould equation
    {
        SparseMatrix A = assemble_dirichlet_laplacian(grid, [](int, int) { return 1.0; });
        auto ids = interior_nodes(grid);
        auto y = A.multiply(restrict_interior(state.phi));
        double s = 0.0, nb = 0.0;
        for (size_t k = 0; k < ids.size(); ++k) {
            int i = ids[k];
            double b = coeffs.alpha * (state.theta1.values[i] - state.theta2.values[i]) *
                           sigma.values[i] +
                       src.g.values[i];
            s += (y[k] - b) * (y[k] - b);
            nb += b * b;
        }
        worst = std::max(worst, std::sqrt(s) / (1.0 + std::sqrt(nb)));
    }
    // membrane complementarity
    {
        LcpProblem lcp;
        lcp.A = assemble_atheta(grid, coeffs.a, state.theta1);
        lcp.b = restrict_interior(src.f);
        lcp.psi = restrict_interior(state.phi);
        double r = lcp_residual(lcp, restrict_interior(state.u));
        double b_inf = 0.0;
        for (double v : lcp.b) b_inf = std::max(b_inf, std::abs(v));
        worst = std::max(worst, r / (1.0 + b_inf));
    }
    return worst;
}

}  // namespace thermoqvi
