#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace thermoqvi {

/// Structured node-centred grid on the unit interval (dim=1) or unit
/// square (dim=2): n cells per axis, n+1 nodes per axis, spacing h = 1/n.
/// Node indexing is row-major: id = j*(n+1) + i.
struct Grid {
    int dim = 1;
    int n = 2;
    double h = 0.5;

    int nodes_per_axis() const { return n + 1; }
    int node_count() const {
        int m = nodes_per_axis();
        return dim == 1 ? m : m * m;
    }
    int index(int i, int j = 0) const { return j * nodes_per_axis() + i; }
    double x(int i) const { return i * h; }
    double y(int j) const { return j * h; }
    bool on_boundary(int i, int j = 0) const {
        if (i == 0 || i == n) return true;
        return dim == 2 && (j == 0 || j == n);
    }
    bool operator==(const Grid&) const = default;
};

/// Throws std::invalid_argument unless dim is 1 or 2 and n >= 2.
Grid build_grid(int dim, int n);

enum class FieldKind { free_field, zero_trace };

/// Nodal values of one scalar quantity on a Grid. zero_trace fields keep
/// their boundary rows pinned to exactly 0.
struct ScalarField {
    Grid grid;
    FieldKind kind = FieldKind::free_field;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(const Grid& g, FieldKind k = FieldKind::free_field);

    double& operator[](int id) { return values[id]; }
    double operator[](int id) const { return values[id]; }
    double at(int i, int j = 0) const { return values[grid.index(i, j)]; }
    double& at(int i, int j = 0) { return values[grid.index(i, j)]; }

    static ScalarField constant(const Grid& g, double v,
                                FieldKind k = FieldKind::free_field);
    /// Samples fn(x, y) at the nodes (y passed as 0 in 1D). zero_trace
    /// fields get their boundary values forced to 0 regardless of fn.
    static ScalarField from_fn(const Grid& g,
                               const std::function<double(double, double)>& fn,
                               FieldKind k = FieldKind::free_field);

    double max() const;
    double min() const;
    double max_abs() const;
    /// Asserts the type invariants (finite values, pinned boundary).
    void validate() const;
    void zero_boundary();
};

/// max_i |a_i - b_i| over all nodes; grids must agree.
double max_abs_diff(const ScalarField& a, const ScalarField& b);

}  // namespace thermoqvi
