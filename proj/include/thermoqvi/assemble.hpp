#pragma once

#include <functional>
#include <vector>

#include "thermoqvi/coefficients.hpp"
#include "thermoqvi/grid.hpp"
#include "thermoqvi/sparse.hpp"

namespace thermoqvi {

/// Trapezoid quadrature weight of each node: h^dim scaled by 1/2 per
/// boundary face the node touches. These are also the lumped mass weights
/// used by the Neumann assembly below.
std::vector<double> node_weights(const Grid& grid);

/// Discrete integral sum_i w_i v_i. Exact for constants and (in 1D) for
/// nodal samples of affine functions.
double integrate(const ScalarField& field);

/// L1 norm with trapezoid weights.
double norm_l1(const ScalarField& field);
/// L2(Omega) norm with trapezoid weights.
double norm_l2(const ScalarField& field);

/// Operator -kappa*Laplace + c with zero Neumann flux, assembled in
/// symmetric weighted form: A = kappa*Stiff + diag(w_i c_i), where Stiff
/// is the edge-based stiffness of the mirror-closure stencil. Solves use
/// A theta = diag(w) rhs. The c=0 part has exact zero row (and column)
/// sums, which is what makes the discrete heat balance an identity.
SparseMatrix assemble_neumann_helmholtz(const Grid& grid, double kappa,
                                        const ScalarField& c_field);

/// Applies the PDE operator the weighted matrix represents: W^{-1} (A x).
/// For A from assemble_neumann_helmholtz this approximates
/// -kappa*Laplace(x) + c x nodewise to O(h^2) on smooth fields.
std::vector<double> apply_weighted_operator(const SparseMatrix& A,
                                            const Grid& grid,
                                            const std::vector<double>& x);

/// Indices of interior nodes, ascending.
std::vector<int> interior_nodes(const Grid& grid);
/// Values of a field at interior nodes, in interior_nodes() order.
std::vector<double> restrict_interior(const ScalarField& field);
/// Zero-trace field holding the given interior values.
ScalarField extend_by_zero(const Grid& grid,
                           const std::vector<double>& interior_values);

using EdgeCoeffFn = std::function<double(int, int)>;

/// -div(coeff grad .) over interior nodes with eliminated homogeneous
/// Dirichlet boundary, in plain stencil scaling (unit coefficient in 1D
/// gives diagonal 2/h^2). coeff(i, j) is evaluated once per lattice edge.
SparseMatrix assemble_dirichlet_laplacian(const Grid& grid,
                                          const EdgeCoeffFn& coeff);

/// A_theta = -div(a(theta1) grad .), edge coefficient = arithmetic mean of
/// a(theta1) at the two end nodes. Coincides with a * (unit Dirichlet
/// Laplacian) for constant a.
SparseMatrix assemble_atheta(const Grid& grid, const CoefficientFunction& a,
                             const ScalarField& theta1);

/// Nodal max of |grad v . grad w| over interior nodes, centered differences.
double max_grad_dot(const ScalarField& v, const ScalarField& w);

}  // namespace thermoqvi
