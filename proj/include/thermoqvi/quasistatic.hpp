#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "thermoqvi/elliptic.hpp"

namespace thermoqvi {

/// Uniform partition of [0, T] into N steps of length tau = T/N; interval
/// k (1-based) is I_k = [t_{k-1}, t_k).
struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    double tau() const { return horizon / steps; }
    double time(int k) const { return k * tau(); }
    void validate() const;
};

using FieldGenerator = std::function<ScalarField(double)>;

/// Time-dependent problem data: field generators on [0, T] plus initial
/// temperatures.
struct TimeSources {
    FieldGenerator f, g, h1, h2;
    ScalarField theta1_init, theta2_init;

    static FieldGenerator constant_in_time(const ScalarField& field);
};

/// Interval means (1/tau) int_{I_k} of each generator, one Sources per
/// step, by mq-point midpoint quadrature. Reproduces constants exactly.
std::vector<Sources> clement_sources(const TimeSources& src, const TimeGrid& tg,
                                     int mq = 8);

/// One implicit-Euler step: the stationary solver applied with reaction
/// constants c_i + 1/tau and heat sources h_i^k + theta_i^{k-1}/tau.
EllipticState quasistatic_step(const ScalarField& prev_theta1,
                               const ScalarField& prev_theta2, const Sources& step_data,
                               double tau, const Coefficients& coeffs,
                               const RegSchedule& schedule, const SolverParams& params = {},
                               const ContactParams& contact = {},
                               const EllipticState* warm = nullptr);

struct Trajectory {
    TimeGrid tgrid;
    ScalarField theta1_init, theta2_init;
    std::vector<EllipticState> states;        // states[k-1] holds step k
    std::vector<Sources> step_sources;        // Clement means per step

    const ScalarField& theta1_at(int k) const;  // k = 0..N
    const ScalarField& theta2_at(int k) const;
};

/// Marches the semi-discrete system from the initial temperatures,
/// warm-starting each step from the previous state.
Trajectory run_quasistatic(const TimeSources& src, const Grid& grid, const TimeGrid& tg,
                           const Coefficients& coeffs, const RegSchedule& schedule,
                           const SolverParams& params = {}, const ContactParams& contact = {},
                           int mq = 8);

/// Piecewise-constant (value theta^k on I_k) and piecewise-affine (nodal
/// interpolation of {theta^k} with value theta_init at t=0) evaluators for
/// one temperature index (1 or 2).
struct TemperatureInterpolant {
    const Trajectory* traj;
    int which;

    ScalarField piecewise_constant(double t) const;
    ScalarField piecewise_affine(double t) const;
};

std::pair<TemperatureInterpolant, TemperatureInterpolant> interpolants(const Trajectory& traj);

/// Aggregate constant-vs-affine interpolant defect of the two temperature
/// trajectories,
///   gap = sqrt( sum_k ( ||d1^k||^2 + ||d2^k||^2 ) / 3 ),   d^k = theta^k - theta^{k-1},
/// i.e. the L2(0,T;L2) norm of the defect normalized by sqrt(tau), so the
/// a-priori step estimate shows up as a sqrt(tau) decay rate.
double interpolant_gap(const Trajectory& traj);

/// (l, L): extremes of h_i/c_i over the sampled cylinder and of the
/// initial temperatures.
std::pair<double, double> bounds_lL(const Coefficients& coeffs, const TimeSources& src,
                                    const Grid& grid, const TimeGrid& tg, int mq = 8);

struct ParabolicConditions {
    ConditionReport weak;    // f - a g > alpha a (|h1|_{L1 Linf} + |theta10|_inf)
    ConditionReport strong;  // f - a g > 2 alpha a (same norms)
    double h1_l1linf = 0.0;
    double theta10_linf = 0.0;
};

/// Both data conditions controlling the time-dependent contact indicator;
/// constant coefficient function only (inapplicable otherwise).
ParabolicConditions parabolic_nondegeneracy(const Coefficients& coeffs,
                                            const TimeSources& src, const Grid& grid,
                                            const TimeGrid& tg, int mq = 8);

/// Slack of the contact-set time modulus between steps s_idx and t_idx
/// (1-based):
///   ||chi(t)-chi(s)||_L1 <= C ( ||f(t)-f(s)||_L1 + a ||g(t)-g(s)||_L1
///                               + a alpha ||(t1-t2)(t)-(t1-t2)(s)||_L1 ),
/// C = 1/(mu_est - a*alpha*Lhat). Returns rhs - lhs; result.applicable is
/// false when the constant is not positive.
struct ModulusSlack {
    bool applicable = false;
    double slack = 0.0;
    double constant = 0.0;
};
ModulusSlack chi_time_modulus(const Trajectory& traj, int s_idx, int t_idx,
                              const TimeSources& src, double mu_est,
                              const Coefficients& coeffs, int mq = 8);

/// Parabolic uniqueness condition
/// f > a g + a alpha (L-l)(2 + (b1+b2)/gamma0) over the sampled cylinder.
ConditionReport parabolic_uniqueness_check(const Coefficients& coeffs,
                                           const TimeSources& src, const Grid& grid,
                                           const TimeGrid& tg, int mq = 8);

struct TempDiffCheck {
    bool applicable = false;
    double lhs = 0.0;   // max over steps of ||theta1 - theta2||_inf
    double rhs = 0.0;   // T ||h1 - h2||_Linf(Q) + ||theta10 - theta20||_inf
    double slack = 0.0;
};

/// Small-time closeness of the temperatures; needs c1 = c2, kappa1 = kappa2
/// and the sign conditions on the data.
TempDiffCheck temp_diff_linfty_check(const Trajectory& traj, const TimeSources& src,
                                     const Coefficients& coeffs, int mq = 8);

/// Residuals of the weighted-sum / weighted-difference identities between
/// backward time differences and the rates reconstructed from the discrete
/// equations with the binary contact indicator:
///   r_sum  = max_k || b2 d1 + b1 d2 ||_inf   (identity of the scheme)
///   r_diff = max_k || b2 d1 - b1 d2 ||_inf   (reported, no assertion)
/// where d_i = backward difference minus reconstructed rate.
std::pair<double, double> very_weak_residual(const Trajectory& traj,
                                             const Coefficients& coeffs);

/// Per-step sup-norm recursion bound for the first temperature:
/// worst over k of ||theta1^k||_inf - [ tau/(tau c1+1) ||h1^k||_inf
///                                      + 1/(tau c1+1) ||theta1^{k-1}||_inf ].
double theta1_recursion_violation(const Trajectory& traj, const Coefficients& coeffs);

}  // namespace thermoqvi
