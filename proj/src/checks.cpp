#include "thermoqvi/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace thermoqvi {

namespace {

CheckResult make_pass_through(const std::string& name, const std::string& anchor,
                              double measured) {
    // reported quantity, sign is data not a defect
    return {name, true, measured, 0.0, true, anchor};
}

CheckResult inapplicable(const std::string& name, const std::string& anchor) {
    return {name, false, 0.0, 0.0, true, anchor};
}

double data_scale(const Sources& src) {
    return std::max({src.f.max_abs(), src.g.max_abs(), src.h1.max_abs(), src.h2.max_abs()});
}

}  // namespace

std::vector<std::string> elliptic_check_manifest() {
    return {"equation_residuals", "heat_conservation",  "temperature_bounds",
            "temperature_ordering", "temperature_gap",  "obstacle_feasibility",
            "lewy_stampacchia",   "chi_identity",       "nondegeneracy_pointwise_margin",
            "nondegeneracy_sufficient_margin", "nondegeneracy_consistency",
            "uniqueness_margin"};
}

std::vector<CheckResult> run_elliptic_checks(const EllipticState& state,
                                             const Coefficients& coeffs, const Sources& src,
                                             const CheckParams& params) {
    std::vector<CheckResult> out;
    const Grid& grid = state.theta1.grid;
    double scale = data_scale(src);
    double tol = params.tol;

    {
        double r = state_equation_residual(state, coeffs, src);
        out.push_back({"equation_residuals", true, r, tol, r <= tol, "weak-form-residuals"});
    }
    {
        double r = std::abs(conservation_residual(state.theta1, state.theta2, coeffs, src.h1,
                                                  src.h2, state.chi_relaxed));
        double thr = tol * (1.0 + scale);
        out.push_back({"heat_conservation", true, r, thr, r <= thr, "heat-conservation-identity"});
    }
    auto [m, M] = bounds_mM(coeffs, src.h1, src.h2);
    {
        double v = 0.0;
        for (const ScalarField* t : {&state.theta1, &state.theta2}) {
            v = std::max(v, t->max() - M);
            v = std::max(v, m - t->min());
        }
        v = std::max(v, 0.0);
        double thr = tol * (1.0 + scale);
        out.push_back({"temperature_bounds", true, v, thr, v <= thr, "temperature-bounds-m-M"});
    }
    {
        ComparisonResult cmp = check_comparison(state.theta1, state.theta2, coeffs, src.h1, src.h2);
        double thr = tol * (1.0 + scale);
        if (cmp.applicable)
            out.push_back({"temperature_ordering", true, cmp.violation, thr,
                           cmp.violation <= thr, "comparison-principle"});
        else
            out.push_back(inapplicable("temperature_ordering", "comparison-principle"));
    }
    {
        double diff = 0.0;
        for (size_t i = 0; i < state.theta1.values.size(); ++i)
            diff = std::max(diff, std::abs(state.theta1.values[i] - state.theta2.values[i]));
        double v = std::max(0.0, diff - (M - m));
        double thr = tol * (1.0 + scale);
        out.push_back({"temperature_gap", true, v, thr, v <= thr,
                       "sup-bound-temperature-difference"});
    }
    {
        double v = 0.0;
        for (size_t i = 0; i < state.u.values.size(); ++i) {
            v = std::max(v, state.u.values[i] - state.phi.values[i]);
            v = std::max(v, std::max(-state.chi_relaxed.values[i],
                                     state.chi_relaxed.values[i] - 1.0));
            v = std::max(v, std::max(-state.chi.values[i], state.chi.values[i] - 1.0));
        }
        v = std::max(v, 0.0);
        out.push_back({"obstacle_feasibility", true, v, 0.0, v <= 0.0, "obstacle-feasibility"});
    }
    {
        double v = lewy_stampacchia_violation(grid, coeffs, state.theta1, state.u, state.phi,
                                              src.f, state.delta_contact);
        double thr = params.ls_threshold > 0.0
                         ? params.ls_threshold
                         : 1e3 * tol * (1.0 + scale) + grid.h * grid.h * scale;
        out.push_back({"lewy_stampacchia", true, v, thr, v <= thr, "lewy-stampacchia-sandwich"});
    }
    {
        ScalarField gap(grid);
        for (size_t i = 0; i < gap.values.size(); ++i)
            gap.values[i] = state.chi.values[i] *
                            std::max(state.phi.values[i] - state.u.values[i], 0.0);
        double v = integrate(gap);
        double thr = state.delta_contact;  // |Omega| = 1
        out.push_back({"chi_identity", true, v, thr, v <= thr, "contact-indicator-identity"});
    }
    NondegeneracyReport nd = nondegeneracy_check(state, coeffs, src);
    if (nd.pointwise.applicable)
        out.push_back(make_pass_through("nondegeneracy_pointwise_margin",
                                        "contact-identification-pointwise",
                                        nd.pointwise.margin));
    else
        out.push_back(inapplicable("nondegeneracy_pointwise_margin",
                                   "contact-identification-pointwise"));
    if (nd.sufficient.applicable)
        out.push_back(make_pass_through("nondegeneracy_sufficient_margin",
                                        "contact-identification-data", nd.sufficient.margin));
    else
        out.push_back(inapplicable("nondegeneracy_sufficient_margin",
                                   "contact-identification-data"));
    {
        // the data condition implies the pointwise one; test the implication
        if (nd.sufficient.applicable && nd.sufficient.margin > 0.0) {
            double v = std::max(0.0, -nd.pointwise.margin);
            double thr = tol * (1.0 + scale);
            out.push_back({"nondegeneracy_consistency", true, v, thr, v <= thr,
                           "contact-identification-implication"});
        } else {
            out.push_back(inapplicable("nondegeneracy_consistency",
                                       "contact-identification-implication"));
        }
    }
    {
        ConditionReport uq = uniqueness_check(coeffs, src.f, src.g, m, M);
        if (uq.applicable)
            out.push_back(make_pass_through("uniqueness_margin", "uniqueness-contraction",
                                            uq.margin));
        else
            out.push_back(inapplicable("uniqueness_margin", "uniqueness-contraction"));
    }
    return out;
}

std::vector<std::string> quasistatic_check_manifest() {
    return {"step_equation_residuals", "temperature_bounds_lL", "theta1_recursion",
            "step_feasibility",        "chi_time_modulus",      "interpolant_gap_rate",
            "temp_diff_linfty",        "very_weak_sum",         "very_weak_diff",
            "parabolic_nondegeneracy_weak_margin", "parabolic_nondegeneracy_strong_margin",
            "parabolic_uniqueness_margin"};
}

namespace {

// gap of the dyadically coarsened trajectory (every other state, 2*tau)
double coarse_gap(const Trajectory& traj) {
    const Grid& grid = traj.theta1_init.grid;
    auto w = node_weights(grid);
    double total = 0.0;
    for (int k = 2; k <= traj.tgrid.steps; k += 2) {
        const ScalarField& a1 = traj.theta1_at(k);
        const ScalarField& b1 = traj.theta1_at(k - 2);
        const ScalarField& a2 = traj.theta2_at(k);
        const ScalarField& b2 = traj.theta2_at(k - 2);
        double s = 0.0;
        for (size_t i = 0; i < w.size(); ++i) {
            double d1 = a1.values[i] - b1.values[i];
            double d2 = a2.values[i] - b2.values[i];
            s += w[i] * (d1 * d1 + d2 * d2);
        }
        total += s / 3.0;
    }
    return std::sqrt(total);
}

}  // namespace

std::vector<CheckResult> run_quasistatic_checks(const Trajectory& traj,
                                                const Coefficients& coeffs,
                                                const TimeSources& src,
                                                const CheckParams& params) {
    std::vector<CheckResult> out;
    const Grid& grid = traj.theta1_init.grid;
    const TimeGrid& tg = traj.tgrid;
    double tau = tg.tau();
    double tol = params.tol;

    double scale = 0.0;
    for (const Sources& s : traj.step_sources) scale = std::max(scale, data_scale(s));
    scale = std::max({scale, src.theta1_init.max_abs() / tau, src.theta2_init.max_abs() / tau});

    {
        Coefficients aug = coeffs;
        aug.c1 += 1.0 / tau;
        aug.c2 += 1.0 / tau;
        double worst = 0.0;
        for (int k = 1; k <= tg.steps; ++k) {
            Sources s = traj.step_sources[k - 1];
            for (int i = 0; i < grid.node_count(); ++i) {
                s.h1.values[i] += traj.theta1_at(k - 1).values[i] / tau;
                s.h2.values[i] += traj.theta2_at(k - 1).values[i] / tau;
            }
            worst = std::max(worst, state_equation_residual(traj.states[k - 1], aug, s));
        }
        out.push_back({"step_equation_residuals", true, worst, tol, worst <= tol,
                       "weak-form-residuals-per-step"});
    }
    {
        auto [l, L] = bounds_lL(coeffs, src, grid, tg, 8);
        double v = 0.0;
        for (int k = 1; k <= tg.steps; ++k) {
            for (const ScalarField* t : {&traj.theta1_at(k), &traj.theta2_at(k)}) {
                v = std::max(v, t->max() - L);
                v = std::max(v, l - t->min());
            }
        }
        v = std::max(v, 0.0);
        double thr = tol * (1.0 + scale);
        out.push_back({"temperature_bounds_lL", true, v, thr, v <= thr,
                       "temperature-bounds-l-L"});
    }
    {
        double v = std::max(0.0, theta1_recursion_violation(traj, coeffs));
        double thr = tol * (1.0 + scale);
        out.push_back({"theta1_recursion", true, v, thr, v <= thr, "sup-norm-recursion"});
    }
    {
        double v = 0.0;
        for (const EllipticState& st : traj.states) {
            for (size_t i = 0; i < st.u.values.size(); ++i)
                v = std::max(v, st.u.values[i] - st.phi.values[i]);
            ScalarField gap(grid);
            for (size_t i = 0; i < gap.values.size(); ++i)
                gap.values[i] =
                    st.chi.values[i] * std::max(st.phi.values[i] - st.u.values[i], 0.0);
            v = std::max(v, integrate(gap) - st.delta_contact);
        }
        v = std::max(v, 0.0);
        out.push_back({"step_feasibility", true, v, 0.0, v <= 1e-15, "obstacle-feasibility"});
    }
    {
        ParabolicConditions cond = parabolic_nondegeneracy(coeffs, src, grid, tg, 8);
        bool strong_ok = cond.strong.applicable && cond.strong.margin > 0.0;
        if (strong_ok && tg.steps >= 2) {
            // pointwise non-degeneracy floor over the steps as the modulus constant
            double mu = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= tg.steps; ++k) {
                NondegeneracyReport nd = nondegeneracy_check(traj.states[k - 1], coeffs,
                                                             traj.step_sources[k - 1]);
                mu = std::min(mu, nd.pointwise.margin);
            }
            double worst = 0.0;
            bool any = false;
            for (int k = 2; k <= tg.steps; ++k) {
                ModulusSlack ms = chi_time_modulus(traj, k - 1, k, src, mu, coeffs, 8);
                if (!ms.applicable) continue;
                any = true;
                worst = std::max(worst, -ms.slack);
            }
            double thr = tol * (1.0 + scale);
            if (any)
                out.push_back({"chi_time_modulus", true, std::max(worst, 0.0), thr,
                               worst <= thr, "contact-set-time-modulus"});
            else
                out.push_back(inapplicable("chi_time_modulus", "contact-set-time-modulus"));
        } else {
            out.push_back(inapplicable("chi_time_modulus", "contact-set-time-modulus"));
        }
    }
    {
        if (tg.steps >= 4 && tg.steps % 2 == 0) {
            double fine = interpolant_gap(traj);
            double coarse = coarse_gap(traj);
            if (coarse > 1e3 * tol) {
                double ratio = fine / coarse;
                bool ok = ratio >= 0.53 && ratio <= 0.88;
                out.push_back({"interpolant_gap_rate", true, ratio, 0.88, ok,
                               "interpolant-defect-rate"});
            } else {
                out.push_back(inapplicable("interpolant_gap_rate", "interpolant-defect-rate"));
            }
        } else {
            out.push_back(inapplicable("interpolant_gap_rate", "interpolant-defect-rate"));
        }
    }
    {
        TempDiffCheck td = temp_diff_linfty_check(traj, src, coeffs, 8);
        if (td.applicable) {
            double v = std::max(0.0, -td.slack);
            double thr = tol * (1.0 + scale);
            out.push_back({"temp_diff_linfty", true, v, thr, v <= thr,
                           "small-time-temperature-closeness"});
        } else {
            out.push_back(inapplicable("temp_diff_linfty", "small-time-temperature-closeness"));
        }
    }
    {
        auto [r_sum, r_diff] = very_weak_residual(traj, coeffs);
        double thr = tol * (1.0 + scale) * (1.0 + 1.0 / tau);
        out.push_back({"very_weak_sum", true, r_sum, thr, r_sum <= thr,
                       "rate-identity-weighted-sum"});
        out.push_back(make_pass_through("very_weak_diff", "rate-identity-weighted-difference",
                                        r_diff));
    }
    {
        ParabolicConditions cond = parabolic_nondegeneracy(coeffs, src, grid, tg, 8);
        if (cond.weak.applicable) {
            out.push_back(make_pass_through("parabolic_nondegeneracy_weak_margin",
                                            "contact-identification-data-evolution",
                                            cond.weak.margin));
            out.push_back(make_pass_through("parabolic_nondegeneracy_strong_margin",
                                            "contact-identification-data-evolution",
                                            cond.strong.margin));
        } else {
            out.push_back(inapplicable("parabolic_nondegeneracy_weak_margin",
                                       "contact-identification-data-evolution"));
            out.push_back(inapplicable("parabolic_nondegeneracy_strong_margin",
                                       "contact-identification-data-evolution"));
        }
        ConditionReport uq = parabolic_uniqueness_check(coeffs, src, grid, tg, 8);
        if (uq.applicable)
            out.push_back(make_pass_through("parabolic_uniqueness_margin",
                                            "uniqueness-contraction-evolution", uq.margin));
        else
            out.push_back(inapplicable("parabolic_uniqueness_margin",
                                       "uniqueness-contraction-evolution"));
    }
    return out;
}

CheckResult perturbation_contraction(const Grid& grid, const Coefficients& coeffs,
                                     const Sources& base, PerturbationKind kind,
                                     double amplitude, const RegSchedule& schedule,
                                     const SolverParams& solver, const ContactParams& contact,
                                     const CheckParams& params) {
    std::mt19937 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_field = [&]() {
        ScalarField r(grid);
        for (double& v : r.values) v = unit(rng);
        return r;
    };

    double scale = data_scale(base);
    double thr = params.tol * (1.0 + scale);
    auto [m, M] = bounds_mM(coeffs, base.h1, base.h2);
    ConditionReport uq = uniqueness_check(coeffs, base.f, base.g, m, M);

    double slack = 0.0;
    double ratio = 0.0;
    if (kind == PerturbationKind::chi_override) {
        EllipticState st = continuation_solve(grid, coeffs, base, schedule, solver, contact);
        ScalarField sigma = st.chi_relaxed;
        ScalarField sigma_hat = sigma;
        ScalarField r = random_field();
        for (size_t i = 0; i < sigma_hat.values.size(); ++i)
            sigma_hat.values[i] =
                std::clamp(sigma_hat.values[i] + amplitude * (r.values[i] - 0.5), 0.0, 1.0);
        PairSolution sol = solve_pair(grid, coeffs, base.h1, base.h2, sigma, solver);
        PairSolution sol_hat = solve_pair(grid, coeffs, base.h1, base.h2, sigma_hat, solver);
        slack = l1_dependence_slack(sol, sol_hat, base.h1, base.h2, base.h1, base.h2, sigma,
                                    sigma_hat, coeffs);
    } else {
        Sources pert = base;
        ScalarField r = random_field();
        ScalarField& target = kind == PerturbationKind::h1_shift ? pert.h1 : pert.h2;
        for (size_t i = 0; i < target.values.size(); ++i)
            target.values[i] += amplitude * r.values[i];
        EllipticState st = continuation_solve(grid, coeffs, base, schedule, solver, contact);
        EllipticState st_hat = continuation_solve(grid, coeffs, pert, schedule, solver, contact);
        PairSolution sol{st.theta1, st.theta2, {}};
        PairSolution sol_hat{st_hat.theta1, st_hat.theta2, {}};
        slack = l1_dependence_slack(sol, sol_hat, base.h1, base.h2, pert.h1, pert.h2,
                                    st.chi_relaxed, st_hat.chi_relaxed, coeffs);
        if (uq.applicable && uq.margin > 0.0) {
            double gamma0 = std::min(coeffs.c1 - std::max(coeffs.b2 - coeffs.b1, 0.0),
                                     coeffs.c2 - std::max(coeffs.b1 - coeffs.b2, 0.0));
            auto l1_diff = [&](const ScalarField& a, const ScalarField& b) {
                ScalarField d(grid);
                for (size_t i = 0; i < d.values.size(); ++i)
                    d.values[i] = a.values[i] - b.values[i];
                return norm_l1(d);
            };
            double lhs = l1_diff(st.theta1, st_hat.theta1) + l1_diff(st.theta2, st_hat.theta2);
            double rhs = l1_diff(base.h1, pert.h1) + l1_diff(base.h2, pert.h2) +
                         (M - m) * (coeffs.b1 + coeffs.b2) *
                             l1_diff(st.chi_relaxed, st_hat.chi_relaxed);
            if (rhs > 0.0) ratio = lhs * gamma0 / rhs;
        }
    }

    CheckResult out;
    out.name = "perturbation_contraction";
    out.anchor = "l1-continuous-dependence";
    out.applicable = true;
    out.measured = std::max(0.0, -slack);
    out.threshold = thr;
    out.pass = out.measured <= thr && ratio <= 2.0;
    return out;
}

std::string scorecard_csv(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    os << "name,applicable,measured,threshold,pass,anchor\n";
    char buf[64];
    for (const CheckResult& r : results) {
        os << r.name << ',' << (r.applicable ? 1 : 0) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.measured);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.threshold);
        os << buf << ',' << (r.pass ? 1 : 0) << ',' << r.anchor << '\n';
    }
    return os.str();
}

bool all_applicable_pass(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (r.applicable && !r.pass) return false;
    return true;
}

}  // namespace thermoqvi
