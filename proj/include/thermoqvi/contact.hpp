#pragma once

#include "thermoqvi/assemble.hpp"
#include "thermoqvi/thermal.hpp"

namespace thermoqvi {

/// Contact-detection controls. delta_contact <= 0 requests the default
/// h^2 * max|f| / lambda1, which scales with the obstacle-problem
/// regularity gap of the discretization.
struct ContactParams {
    double delta_contact = 0.0;
    double omega = 1.5;
    double tol = 1e-12;
    int max_iter = 200000;

    double resolved_delta(const Grid& grid, double f_inf, double lambda1) const;
};

/// Mould displacement: -Lap phi = alpha (theta1 - theta2) chi + g with
/// homogeneous Dirichlet boundary; chi may be any field in [0,1].
ScalarField solve_mould(const Grid& grid, double alpha, const ScalarField& theta1,
                        const ScalarField& theta2, const ScalarField& chi,
                        const ScalarField& g, const SolverParams& params = {});

/// Membrane displacement under the upper obstacle: the variational
/// inequality for A_theta with u <= obstacle, reduced to an LCP over the
/// interior nodes and solved by projected SOR. u <= obstacle holds exactly.
/// Throws on PSOR non-convergence.
ScalarField solve_membrane(const Grid& grid, const Coefficients& coeffs,
                           const ScalarField& theta1, const ScalarField& f,
                           const ScalarField& obstacle, const ContactParams& params = {});

/// Max positive-part violation of min(f, A_theta obstacle) <= A_theta u <= f
/// over interior nodes, skipping nodes whose stencil straddles the contact
/// transition (the discrete free boundary carries an O(1) defect by
/// construction, so it is excluded from the measurement).
double lewy_stampacchia_violation(const Grid& grid, const Coefficients& coeffs,
                                  const ScalarField& theta1, const ScalarField& u,
                                  const ScalarField& obstacle, const ScalarField& f,
                                  double delta_contact);

/// Binary contact indicator: 1 where obstacle - u <= delta_contact.
ScalarField contact_set(const ScalarField& u, const ScalarField& obstacle,
                        double delta_contact);

}  // namespace thermoqvi
