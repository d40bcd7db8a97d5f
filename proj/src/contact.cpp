#include "thermoqvi/contact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

double ContactParams::resolved_delta(const Grid& grid, double f_inf, double lambda1) const {
    if (delta_contact > 0.0) return delta_contact;
    double d = grid.h * grid.h * f_inf / lambda1;
    return d > 0.0 ? d : grid.h * grid.h;
}

ScalarField solve_mould(const Grid& grid, double alpha, const ScalarField& theta1,
                        const ScalarField& theta2, const ScalarField& chi,
                        const ScalarField& g, const SolverParams& params) {
    if (chi.min() < -1e-14 || chi.max() > 1.0 + 1e-14)
        throw std::invalid_argument("solve_mould: chi must lie in [0,1]");
    SparseMatrix A = assemble_dirichlet_laplacian(grid, [](int, int) { return 1.0; });
    auto ids = interior_nodes(grid);
    std::vector<double> rhs(ids.size());
    for (size_t k = 0; k < ids.size(); ++k) {
        int i = ids[k];
        rhs[k] = alpha * (theta1.values[i] - theta2.values[i]) * chi.values[i] + g.values[i];
    }
    auto sol = cg_solve(A, rhs, params.lin_tol, params.lin_max_iter);
    if (!sol.stats.converged)
        throw std::runtime_error("solve_mould: CG did not converge");
    return extend_by_zero(grid, sol.x);
}

ScalarField solve_membrane(const Grid& grid, const Coefficients& coeffs,
                           const ScalarField& theta1, const ScalarField& f,
                           const ScalarField& obstacle, const ContactParams& params) {
    LcpProblem lcp;
    lcp.A = assemble_atheta(grid, coeffs.a, theta1);
    lcp.b = restrict_interior(f);
    auto ids = interior_nodes(grid);
    lcp.psi.resize(ids.size());
    for (size_t k = 0; k < ids.size(); ++k) {
        double p = obstacle.values[ids[k]];
        lcp.psi[k] = std::isinf(p) ? kNoBound : p;
    }
    auto sol = psor_solve(lcp, params.omega, params.tol, params.max_iter);
    if (!sol.stats.converged)
        throw std::runtime_error("solve_membrane: PSOR did not converge");
    return extend_by_zero(grid, sol.x);
}

double lewy_stampacchia_violation(const Grid& grid, const Coefficients& coeffs,
                                  const ScalarField& theta1, const ScalarField& u,
                                  const ScalarField& obstacle, const ScalarField& f,
                                  double delta_contact) {
    SparseMatrix A = assemble_atheta(grid, coeffs.a, theta1);
    auto ui = restrict_interior(u);
    auto pi = restrict_interior(obstacle);
    auto fi = restrict_interior(f);
    auto Au = A.multiply(ui);
    auto Ap = A.multiply(pi);

    ScalarField chi = contact_set(u, obstacle, delta_contact);
    auto ids = interior_nodes(grid);
    int m = grid.nodes_per_axis();
    auto straddles = [&](int id) {
        int i = id % m, j = id / m;
        double c = chi.values[id];
        if (chi.at(i - 1, j) != c || chi.at(i + 1, j) != c) return true;
        if (grid.dim == 2 && (chi.at(i, j - 1) != c || chi.at(i, j + 1) != c)) return true;
        return false;
    };

    double worst = 0.0;
    for (size_t k = 0; k < ids.size(); ++k) {
        if (straddles(ids[k])) continue;
        double upper = Au[k] - fi[k];
        double lower = std::min(fi[k], Ap[k]) - Au[k];
        worst = std::max({worst, upper, lower});
    }
    return worst;
}

ScalarField contact_set(const ScalarField& u, const ScalarField& obstacle,
                        double delta_contact) {
    if (u.grid != obstacle.grid)
        throw std::invalid_argument("contact_set: grid mismatch");
    if (!(delta_contact > 0.0))
        throw std::invalid_argument("contact_set: need delta_contact > 0");
    ScalarField chi(u.grid);
    for (size_t i = 0; i < chi.values.size(); ++i)
        chi.values[i] = (obstacle.values[i] - u.values[i] <= delta_contact) ? 1.0 : 0.0;
    return chi;
}

}  // namespace thermoqvi
