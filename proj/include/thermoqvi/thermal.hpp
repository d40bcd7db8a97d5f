#pragma once

#include <utility>

#include "thermoqvi/assemble.hpp"
#include "thermoqvi/coefficients.hpp"
#include "thermoqvi/grid.hpp"
#include "thermoqvi/solvers.hpp"

namespace thermoqvi {

/// Linear-solver and outer-iteration controls shared by the solvers.
struct SolverParams {
    double lin_tol = 1e-13;     // CG relative tolerance
    int lin_max_iter = 50000;   // CG iteration cap
    double omega = 1.5;         // PSOR relaxation factor
    double psor_tol = 1e-12;    // PSOR complementarity tolerance (scaled)
    int psor_max_iter = 200000;
    double pair_tol = 1e-11;    // temperature-pair residual tolerance (scaled)
    int pair_max_outer = 400;
    double fp_tol = 1e-10;      // fixed-point update tolerance
    int fp_max_outer = 400;
    double fp_damping = 1.0;    // Picard relaxation, in (0,1]
};

/// Coercivity margin of the exchange-coupled pair:
/// c_sigma = min(c1 - (b2-b1)^+ s/4, c2 - (b1-b2)^+ s/4) with s = sigma_inf.
/// May be <= 0; callers decide whether that is fatal.
double coercivity_margin(const Coefficients& coeffs, double sigma_inf);

struct PairSolution {
    ScalarField theta1, theta2;
    SolveStats stats;
};

/// Solves the weakly coupled temperature pair for a given exchange field
/// sigma in [0,1]:
///   -kappa_i Lap theta_i + c_i theta_i = h_i + (-1)^i b_i (theta1-theta2) sigma,
/// zero Neumann flux. Block Gauss-Seidel between the two equations with
/// inner CG; stops on the joint residual. Throws if the coercivity margin
/// for max(sigma) is not positive or sigma leaves [0,1].
PairSolution solve_pair(const Grid& grid, const Coefficients& coeffs,
                        const ScalarField& h1, const ScalarField& h2,
                        const ScalarField& sigma, const SolverParams& params = {});

/// (m, M) = (min(min h1/c1, min h2/c2), max(max h1/c1, max h2/c2)).
std::pair<double, double> bounds_mM(const Coefficients& coeffs,
                                    const ScalarField& h1, const ScalarField& h2);

struct ComparisonResult {
    bool applicable = false;  // c2/k2 >= c1/k1 and h1/k1 >= h2/k2 >= 0
    double violation = 0.0;   // max(0, max(theta2-theta1), max(-theta2))
};

/// Ordering check theta1 >= theta2 >= 0 under its structural preconditions;
/// marked inapplicable (not failed) when they do not hold.
ComparisonResult check_comparison(const ScalarField& theta1, const ScalarField& theta2,
                                  const Coefficients& coeffs, const ScalarField& h1,
                                  const ScalarField& h2);

/// A-priori sup bound max|h1|/c1 for the first temperature.
double linfty_theta1_bound(const Coefficients& coeffs, const ScalarField& h1);

/// Slack (rhs - lhs) of the L1 continuous-dependence estimate
///   g1 ||t1-t1^|| + g2 ||t2-t2^|| <=
///     ||h1-h1^|| + ||h2-h2^|| + (M-m)(b1+b2) ||sigma-sigma^||
/// with g1 = c1 - (b2-b1)^+ ||sigma^||_inf, g2 = c2 - (b1-b2)^+ ||sigma^||_inf
/// and (m, M) from the unhatted data. Throws unless g1, g2 > 0.
double l1_dependence_slack(const PairSolution& sol, const PairSolution& sol_hat,
                           const ScalarField& h1, const ScalarField& h2,
                           const ScalarField& h1_hat, const ScalarField& h2_hat,
                           const ScalarField& sigma, const ScalarField& sigma_hat,
                           const Coefficients& coeffs);

/// Residual of the discrete heat balance
///   int(c1 t1 + c2 t2) - int(h1 + h2) - (b2-b1) int sigma (t1 - t2),
/// an exact identity of the scheme up to linear-solver tolerance.
double conservation_residual(const ScalarField& theta1, const ScalarField& theta2,
                             const Coefficients& coeffs, const ScalarField& h1,
                             const ScalarField& h2, const ScalarField& sigma);

}  // namespace thermoqvi
