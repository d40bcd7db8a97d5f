#pragma once

#include <optional>
#include <vector>

#include "thermoqvi/contact.hpp"
#include "thermoqvi/thermal.hpp"

namespace thermoqvi {

/// Problem data of one stationary scenario.
struct Sources {
    ScalarField f, g, h1, h2;
};

/// Geometric schedule for sharpening the Heaviside ramp. eps_min <= 0
/// requests the default h^2 (below grid resolution further sharpening is
/// invisible). c_nu is the consistency constant of the ramp family: the
/// linear ramp satisfies chi_eps(s)*s <= eps/4 for s > 0.
struct RegSchedule {
    double eps0 = 1.0;
    double factor = 0.5;
    double eps_min = 0.0;
    double c_nu = 0.25;

    double resolved_eps_min(const Grid& grid) const;
    std::vector<double> stages(const Grid& grid) const;  // validates
};

/// Lipschitz ramp approximating the complemented Heaviside graph:
/// chi_eps(s) = clamp(1 - s/eps, 0, 1). Equals 1 for s <= 0, vanishes for
/// s >= eps, is non-increasing, and chi_eps(s)*s <= eps/4 on s > 0.
double chi_eps(double s, double eps);

struct StageInfo {
    double eps = 0.0;
    int sweeps = 0;
    double residual = 0.0;
    bool converged = false;
};

struct SolveReport {
    bool converged = false;
    double residual = 0.0;      // last fixed-point update norm
    double eps_reached = 0.0;
    int total_sweeps = 0;
    double damping_used = 1.0;
    std::vector<StageInfo> stages;
};

/// Converged tuple of one stationary (or one time-step) solve. chi is the
/// binary contact indicator; chi_relaxed is the ramp field the temperature
/// and mould equations were solved with at the final eps.
struct EllipticState {
    ScalarField theta1, theta2, phi, u, chi, chi_relaxed;
    double delta_contact = 0.0;
    SolveReport report;
};

/// One Picard pass of the composed solution map at fixed eps: temperatures
/// from the relaxed exchange field, then mould, then membrane; relaxed
/// update (w, phi) <- (1-damping)(w, phi) + damping (u_new, phi_new) with
/// automatic halving of the damping when the update norm grows.
/// Throws unless the coercivity constant c0 is positive. Non-convergence
/// is recorded in the report, not thrown.
EllipticState fixed_point_solve(const Grid& grid, const Coefficients& coeffs,
                                const Sources& src, double eps,
                                const SolverParams& params = {},
                                const ContactParams& contact = {},
                                const EllipticState* start = nullptr);

/// Runs fixed_point_solve over the schedule eps0, eps0*factor, ...,
/// eps_min, warm-starting each stage, then extracts the binary contact set.
EllipticState continuation_solve(const Grid& grid, const Coefficients& coeffs,
                                 const Sources& src, const RegSchedule& schedule,
                                 const SolverParams& params = {},
                                 const ContactParams& contact = {},
                                 const EllipticState* start = nullptr);

/// Evaluation of one inequality-type condition on the data: when
/// applicable, margin = lhs - rhs and the condition holds iff margin > 0.
struct ConditionReport {
    bool applicable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double k_grad = 0.0;
};

struct NondegeneracyReport {
    ConditionReport pointwise;   // min over interior nodes of f - A_theta phi
    ConditionReport sufficient;  // a-priori data condition implying the above
};

/// Non-degeneracy of the converged state, evaluated both directly (discrete
/// pointwise f + div(a grad phi) at interior nodes) and through the
/// a-priori sufficient condition
///   f - l2 g^+ + l1 g^- > alpha l2 (M-m) + |a'|_inf K_grad,
/// K_grad = 0 for constant a, else the discrete max of |grad theta1 . grad phi|
/// (a numerical surrogate for the analytic gradient bound).
NondegeneracyReport nondegeneracy_check(const EllipticState& state,
                                        const Coefficients& coeffs, const Sources& src);

/// Contraction condition for uniqueness (constant a only):
/// gamma0 = min(c1-(b2-b1)^+, c2-(b1-b2)^+) > 0 and
/// f > a g + a alpha (M-m)(2 + (b1+b2)/gamma0) everywhere.
ConditionReport uniqueness_check(const Coefficients& coeffs, const ScalarField& f,
                                 const ScalarField& g, double m, double M);

/// Runs the continuation from two different starting guesses (zero state
/// and the unconstrained-membrane state) and returns the largest field
/// discrepancy. Small when the uniqueness condition holds.
double cross_solution_agreement(const Grid& grid, const Coefficients& coeffs,
                                const Sources& src, const RegSchedule& schedule,
                                const SolverParams& params = {},
                                const ContactParams& contact = {});

/// Max of the four equation residuals of the state (temperature pair,
/// mould equation, membrane complementarity), each normalized by its data
/// scale. Recomputable from persisted fields; tampering shows up here.
double state_equation_residual(const EllipticState& state, const Coefficients& coeffs,
                               const Sources& src);

}  // namespace thermoqvi
