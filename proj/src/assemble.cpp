#include "thermoqvi/assemble.hpp"

#include <cmath>
#include <stdexcept>

namespace thermoqvi {

namespace {

// Stiffness weight of the lattice edge from (i,j) along axis d. The
// transverse trapezoid factor keeps the assembled operator symmetric and
// consistent with the mirror-reflected Neumann stencil.
double edge_weight(const Grid& g, int i, int j, int axis) {
    double t = std::pow(g.h, g.dim - 2);
    if (g.dim == 2) {
        int transverse = axis == 0 ? j : i;
        if (transverse == 0 || transverse == g.n) t *= 0.5;
    }
    return t;
}

template <typename Visit>
void for_each_edge(const Grid& g, Visit&& visit) {
    int m = g.nodes_per_axis();
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) visit(g.index(i), g.index(i + 1), edge_weight(g, i, 0, 0));
        return;
    }
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < g.n; ++i)
            visit(g.index(i, j), g.index(i + 1, j), edge_weight(g, i, j, 0));
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < m; ++i)
            visit(g.index(i, j), g.index(i, j + 1), edge_weight(g, i, j, 1));
}

}  // namespace

std::vector<double> node_weights(const Grid& grid) {
    int m = grid.nodes_per_axis();
    std::vector<double> w(grid.node_count(), std::pow(grid.h, grid.dim));
    auto axis_factor = [&](int i) { return (i == 0 || i == grid.n) ? 0.5 : 1.0; };
    if (grid.dim == 1) {
        for (int i = 0; i < m; ++i) w[i] *= axis_factor(i);
    } else {
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) w[grid.index(i, j)] *= axis_factor(i) * axis_factor(j);
    }
    return w;
}

double integrate(const ScalarField& field) {
    auto w = node_weights(field.grid);
    double s = 0.0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * field.values[i];
    return s;
}

double norm_l1(const ScalarField& field) {
    auto w = node_weights(field.grid);
    double s = 0.0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * std::abs(field.values[i]);
    return s;
}

double norm_l2(const ScalarField& field) {
    auto w = node_weights(field.grid);
    double s = 0.0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * field.values[i] * field.values[i];
    return std::sqrt(s);
}

SparseMatrix assemble_neumann_helmholtz(const Grid& grid, double kappa,
                                        const ScalarField& c_field) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("assemble_neumann_helmholtz: need kappa > 0");
    if (c_field.grid != grid)
        throw std::invalid_argument("assemble_neumann_helmholtz: grid mismatch");
    SparseBuilder builder(grid.node_count());
    for_each_edge(grid, [&](int a, int b, double t) {
        builder.add(a, a, kappa * t);
        builder.add(b, b, kappa * t);
        builder.add(a, b, -kappa * t);
        builder.add(b, a, -kappa * t);
    });
    auto w = node_weights(grid);
    for (int i = 0; i < grid.node_count(); ++i)
        builder.add(i, i, w[i] * c_field.values[i]);
    return builder.build();
}

std::vector<double> apply_weighted_operator(const SparseMatrix& A, const Grid& grid,
                                            const std::vector<double>& x) {
    auto y = A.multiply(x);
    auto w = node_weights(grid);
    for (size_t i = 0; i < y.size(); ++i) y[i] /= w[i];
    return y;
}

std::vector<int> interior_nodes(const Grid& grid) {
    std::vector<int> ids;
    int m = grid.nodes_per_axis();
    if (grid.dim == 1) {
        for (int i = 1; i < grid.n; ++i) ids.push_back(i);
    } else {
        for (int j = 1; j < grid.n; ++j)
            for (int i = 1; i < grid.n; ++i) ids.push_back(grid.index(i, j));
    }
    (void)m;
    return ids;
}

std::vector<double> restrict_interior(const ScalarField& field) {
    auto ids = interior_nodes(field.grid);
    std::vector<double> v(ids.size());
    for (size_t k = 0; k < ids.size(); ++k) v[k] = field.values[ids[k]];
    return v;
}

ScalarField extend_by_zero(const Grid& grid, const std::vector<double>& interior_values) {
    auto ids = interior_nodes(grid);
    if (ids.size() != interior_values.size())
        throw std::invalid_argument("extend_by_zero: size mismatch");
    ScalarField f(grid, FieldKind::zero_trace);
    for (size_t k = 0; k < ids.size(); ++k) f.values[ids[k]] = interior_values[k];
    return f;
}

SparseMatrix assemble_dirichlet_laplacian(const Grid& grid, const EdgeCoeffFn& coeff) {
    auto ids = interior_nodes(grid);
    std::vector<int> compact(grid.node_count(), -1);
    for (size_t k = 0; k < ids.size(); ++k) compact[ids[k]] = static_cast<int>(k);

    double inv_h2 = 1.0 / (grid.h * grid.h);
    SparseBuilder builder(static_cast<int>(ids.size()));
    auto touch = [&](int node, int neighbor) {
        int p = compact[node];
        double c = coeff(node, neighbor);
        if (!(c > 0.0))
            throw std::invalid_argument("assemble_dirichlet_laplacian: edge coefficient must be positive");
        builder.add(p, p, c * inv_h2);
        int q = compact[neighbor];
        if (q >= 0) builder.add(p, q, -c * inv_h2);
    };
    int m = grid.nodes_per_axis();
    for (int id : ids) {
        int i = id % m;
        int j = id / m;
        touch(id, grid.index(i - 1, j));
        touch(id, grid.index(i + 1, j));
        if (grid.dim == 2) {
            touch(id, grid.index(i, j - 1));
            touch(id, grid.index(i, j + 1));
        }
    }
    return builder.build();
}

SparseMatrix assemble_atheta(const Grid& grid, const CoefficientFunction& a,
                             const ScalarField& theta1) {
    if (theta1.grid != grid)
        throw std::invalid_argument("assemble_atheta: grid mismatch");
    return assemble_dirichlet_laplacian(grid, [&](int p, int q) {
        return 0.5 * (a(theta1.values[p]) + a(theta1.values[q]));
    });
}

double max_grad_dot(const ScalarField& v, const ScalarField& w) {
    const Grid& g = v.grid;
    if (w.grid != g) throw std::invalid_argument("max_grad_dot: grid mismatch");
    double best = 0.0;
    double inv2h = 1.0 / (2.0 * g.h);
    int m = g.nodes_per_axis();
    auto dvx = [&](const ScalarField& f, int i, int j) {
        return (f.at(i + 1, j) - f.at(i - 1, j)) * inv2h;
    };
    auto dvy = [&](const ScalarField& f, int i, int j) {
        return (f.at(i, j + 1) - f.at(i, j - 1)) * inv2h;
    };
    if (g.dim == 1) {
        for (int i = 1; i < g.n; ++i)
            best = std::max(best, std::abs(dvx(v, i, 0) * dvx(w, i, 0)));
    } else {
        for (int j = 1; j < g.n; ++j)
            for (int i = 1; i < g.n; ++i)
                best = std::max(best, std::abs(dvx(v, i, j) * dvx(w, i, j) +
                                               dvy(v, i, j) * dvy(w, i, j)));
    }
    (void)m;
    return best;
}

}  // namespace thermoqvi
