#include "thermoqvi/grid.hpp"

#include <algorithm>
#include <cmath>

namespace thermoqvi {

Grid build_grid(int dim, int n) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("build_grid: dim must be 1 or 2");
    if (n < 2) throw std::invalid_argument("build_grid: need n >= 2");
    Grid g;
    g.dim = dim;
    g.n = n;
    g.h = 1.0 / n;
    return g;
}

ScalarField::ScalarField(const Grid& g, FieldKind k)
    : grid(g), kind(k), values(static_cast<size_t>(g.node_count()), 0.0) {}

ScalarField ScalarField::constant(const Grid& g, double v, FieldKind k) {
    ScalarField f(g, k);
    std::fill(f.values.begin(), f.values.end(), v);
    if (k == FieldKind::zero_trace) f.zero_boundary();
    return f;
}

ScalarField ScalarField::from_fn(const Grid& g,
                                 const std::function<double(double, double)>& fn,
                                 FieldKind k) {
    ScalarField f(g, k);
    int m = g.nodes_per_axis();
    if (g.dim == 1) {
        for (int i = 0; i < m; ++i) f.values[i] = fn(g.x(i), 0.0);
    } else {
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) f.values[g.index(i, j)] = fn(g.x(i), g.y(j));
    }
    if (k == FieldKind::zero_trace) f.zero_boundary();
    return f;
}

void ScalarField::zero_boundary() {
    int m = grid.nodes_per_axis();
    if (grid.dim == 1) {
        values.front() = 0.0;
        values.back() = 0.0;
    } else {
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                if (grid.on_boundary(i, j)) values[grid.index(i, j)] = 0.0;
    }
}

double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }
double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void ScalarField::validate() const {
    if (static_cast<int>(values.size()) != grid.node_count())
        throw std::invalid_argument("ScalarField: value count does not match grid");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("ScalarField: non-finite value");
    if (kind == FieldKind::zero_trace) {
        int m = grid.nodes_per_axis();
        for (int j = 0; j < (grid.dim == 2 ? m : 1); ++j)
            for (int i = 0; i < m; ++i)
                if (grid.on_boundary(i, j) && values[grid.index(i, j)] != 0.0)
                    throw std::invalid_argument("ScalarField: boundary not pinned to 0");
    }
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("max_abs_diff: grid mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace thermoqvi
