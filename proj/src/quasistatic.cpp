#include "thermoqvi/quasistatic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

void TimeGrid::validate() const {
    if (steps < 1) throw std::invalid_argument("TimeGrid: need N >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: need T > 0");
}

FieldGenerator TimeSources::constant_in_time(const ScalarField& field) {
    return [field](double) { return field; };
}

namespace {

// midpoint sample times of I_k, k 1-based
std::vector<double> sample_times(const TimeGrid& tg, int k, int mq) {
    std::vector<double> t(mq);
    double tau = tg.tau();
    for (int q = 0; q < mq; ++q)
        t[q] = tg.time(k - 1) + (q + 0.5) * tau / mq;
    return t;
}

ScalarField interval_mean(const FieldGenerator& gen, const Grid& grid, const TimeGrid& tg,
                          int k, int mq) {
    ScalarField acc(grid);
    for (double t : sample_times(tg, k, mq)) {
        ScalarField sample = gen(t);
        if (sample.grid != grid)
            throw std::invalid_argument("clement_sources: generator grid mismatch");
        for (size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += sample.values[i];
    }
    for (double& v : acc.values) v /= mq;
    return acc;
}

}  // namespace

std::vector<Sources> clement_sources(const TimeSources& src, const TimeGrid& tg, int mq) {
    tg.validate();
    if (mq < 1) throw std::invalid_argument("clement_sources: need mq >= 1");
    const Grid& grid = src.theta1_init.grid;
    std::vector<Sources> out;
    out.reserve(tg.steps);
    for (int k = 1; k <= tg.steps; ++k) {
        Sources s;
        s.f = interval_mean(src.f, grid, tg, k, mq);
        s.g = interval_mean(src.g, grid, tg, k, mq);
        s.h1 = interval_mean(src.h1, grid, tg, k, mq);
        s.h2 = interval_mean(src.h2, grid, tg, k, mq);
        out.push_back(std::move(s));
    }
    return out;
}

EllipticState quasistatic_step(const ScalarField& prev_theta1, const ScalarField& prev_theta2,
                               const Sources& step_data, double tau, const Coefficients& coeffs,
                               const RegSchedule& schedule, const SolverParams& params,
                               const ContactParams& contact, const EllipticState* warm) {
    if (!(tau > 0.0)) throw std::invalid_argument("quasistatic_step: need tau > 0");
    Coefficients aug = coeffs;
    aug.c1 += 1.0 / tau;
    aug.c2 += 1.0 / tau;
    if (!(coercivity_margin(aug, 1.0) > 0.0))
        throw std::invalid_argument("quasistatic_step: augmented coercivity not positive");

    Sources s = step_data;
    const Grid& grid = prev_theta1.grid;
    for (int i = 0; i < grid.node_count(); ++i) {
        s.h1.values[i] += prev_theta1.values[i] / tau;
        s.h2.values[i] += prev_theta2.values[i] / tau;
    }
    return continuation_solve(grid, aug, s, schedule, params, contact, warm);
}

const ScalarField& Trajectory::theta1_at(int k) const {
    return k == 0 ? theta1_init : states[k - 1].theta1;
}
const ScalarField& Trajectory::theta2_at(int k) const {
    return k == 0 ? theta2_init : states[k - 1].theta2;
}

Trajectory run_quasistatic(const TimeSources& src, const Grid& grid, const TimeGrid& tg,
                           const Coefficients& coeffs, const RegSchedule& schedule,
                           const SolverParams& params, const ContactParams& contact, int mq) {
    tg.validate();
    if (src.theta1_init.grid != grid || src.theta2_init.grid != grid)
        throw std::invalid_argument("run_quasistatic: initial field grid mismatch");
    Trajectory traj;
    traj.tgrid = tg;
    traj.theta1_init = src.theta1_init;
    traj.theta2_init = src.theta2_init;
    traj.step_sources = clement_sources(src, tg, mq);

    const ScalarField* t1 = &traj.theta1_init;
    const ScalarField* t2 = &traj.theta2_init;
    const EllipticState* warm = nullptr;
    double tau = tg.tau();
    for (int k = 1; k <= tg.steps; ++k) {
        EllipticState state = quasistatic_step(*t1, *t2, traj.step_sources[k - 1], tau,
                                               coeffs, schedule, params, contact, warm);
        traj.states.push_back(std::move(state));
        t1 = &traj.states.back().theta1;
        t2 = &traj.states.back().theta2;
        warm = &traj.states.back();
    }
    return traj;
}

ScalarField TemperatureInterpolant::piecewise_constant(double t) const {
    const TimeGrid& tg = traj->tgrid;
    double tau = tg.tau();
    int k = std::clamp(static_cast<int>(std::floor(t / tau)) + 1, 1, tg.steps);
    return which == 1 ? traj->theta1_at(k) : traj->theta2_at(k);
}

ScalarField TemperatureInterpolant::piecewise_affine(double t) const {
    const TimeGrid& tg = traj->tgrid;
    double tau = tg.tau();
    int k = std::clamp(static_cast<int>(std::floor(t / tau)) + 1, 1, tg.steps);
    double s = std::clamp((t - tg.time(k - 1)) / tau, 0.0, 1.0);
    const ScalarField& lo = which == 1 ? traj->theta1_at(k - 1) : traj->theta2_at(k - 1);
    const ScalarField& hi = which == 1 ? traj->theta1_at(k) : traj->theta2_at(k);
    ScalarField out = lo;
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += s * (hi.values[i] - lo.values[i]);
    return out;
}

std::pair<TemperatureInterpolant, TemperatureInterpolant> interpolants(const Trajectory& traj) {
    return {TemperatureInterpolant{&traj, 1}, TemperatureInterpolant{&traj, 2}};
}

double interpolant_gap(const Trajectory& traj) {
    const Grid& grid = traj.theta1_init.grid;
    auto w = node_weights(grid);
    double total = 0.0;
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        const ScalarField& a1 = traj.theta1_at(k);
        const ScalarField& b1 = traj.theta1_at(k - 1);
        const ScalarField& a2 = traj.theta2_at(k);
        const ScalarField& b2 = traj.theta2_at(k - 1);
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

std::pair<double, double> bounds_lL(const Coefficients& coeffs, const TimeSources& src,
                                    const Grid& grid, const TimeGrid& tg, int mq) {
    double lo = std::min(src.theta1_init.min(), src.theta2_init.min());
    double hi = std::max(src.theta1_init.max(), src.theta2_init.max());
    for (int k = 1; k <= tg.steps; ++k) {
        for (double t : sample_times(tg, k, mq)) {
            ScalarField h1 = src.h1(t);
            ScalarField h2 = src.h2(t);
            (void)grid;
            lo = std::min({lo, h1.min() / coeffs.c1, h2.min() / coeffs.c2});
            hi = std::max({hi, h1.max() / coeffs.c1, h2.max() / coeffs.c2});
        }
    }
    return {lo, hi};
}

namespace {

// int_0^T max_x |h1(t,.)| dt by the same midpoint rule as the interval means
double h1_l1_linf(const TimeSources& src, const TimeGrid& tg, int mq) {
    double acc = 0.0;
    double wq = tg.tau() / mq;
    for (int k = 1; k <= tg.steps; ++k)
        for (double t : sample_times(tg, k, mq)) acc += wq * src.h1(t).max_abs();
    return acc;
}

double min_f_minus_ag(const TimeSources& src, const TimeGrid& tg, double a, int mq) {
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= tg.steps; ++k) {
        for (double t : sample_times(tg, k, mq)) {
            ScalarField f = src.f(t);
            ScalarField g = src.g(t);
            for (size_t i = 0; i < f.values.size(); ++i)
                lo = std::min(lo, f.values[i] - a * g.values[i]);
        }
    }
    return lo;
}

}  // namespace

ParabolicConditions parabolic_nondegeneracy(const Coefficients& coeffs, const TimeSources& src,
                                            const Grid& grid, const TimeGrid& tg, int mq) {
    (void)grid;
    ParabolicConditions out;
    out.h1_l1linf = h1_l1_linf(src, tg, mq);
    out.theta10_linf = src.theta1_init.max_abs();
    if (!coeffs.a.is_constant()) return out;
    double a = coeffs.a.lambda1();
    double lhs = min_f_minus_ag(src, tg, a, mq);
    double base = coeffs.alpha * a * (out.h1_l1linf + out.theta10_linf);
    out.weak = {true, lhs, base, lhs - base, 0.0};
    out.strong = {true, lhs, 2.0 * base, lhs - 2.0 * base, 0.0};
    return out;
}

ModulusSlack chi_time_modulus(const Trajectory& traj, int s_idx, int t_idx,
                              const TimeSources& src, double mu_est,
                              const Coefficients& coeffs, int mq) {
    if (s_idx < 1 || t_idx < 1 || s_idx > traj.tgrid.steps || t_idx > traj.tgrid.steps)
        throw std::invalid_argument("chi_time_modulus: step index out of range");
    ModulusSlack out;
    if (!coeffs.a.is_constant()) return out;
    double a = coeffs.a.lambda1();
    double lhat = h1_l1_linf(src, traj.tgrid, mq) + src.theta1_init.max_abs();
    double denom = mu_est - a * coeffs.alpha * lhat;
    if (!(denom > 0.0)) return out;
    out.constant = 1.0 / denom;

    const Grid& grid = traj.theta1_init.grid;
    auto diff_l1 = [&](const ScalarField& x, const ScalarField& y) {
        ScalarField d(grid);
        for (size_t i = 0; i < d.values.size(); ++i) d.values[i] = x.values[i] - y.values[i];
        return norm_l1(d);
    };
    const Sources& ss = traj.step_sources[s_idx - 1];
    const Sources& st = traj.step_sources[t_idx - 1];
    const EllipticState& es = traj.states[s_idx - 1];
    const EllipticState& et = traj.states[t_idx - 1];

    ScalarField ds(grid), dt(grid);
    for (size_t i = 0; i < ds.values.size(); ++i) {
        ds.values[i] = es.theta1.values[i] - es.theta2.values[i];
        dt.values[i] = et.theta1.values[i] - et.theta2.values[i];
    }
    double lhs = diff_l1(et.chi, es.chi);
    double rhs = out.constant * (diff_l1(st.f, ss.f) + a * diff_l1(st.g, ss.g) +
                                 a * coeffs.alpha * diff_l1(dt, ds));
    out.applicable = true;
    out.slack = rhs - lhs;
    return out;
}

ConditionReport parabolic_uniqueness_check(const Coefficients& coeffs, const TimeSources& src,
                                           const Grid& grid, const TimeGrid& tg, int mq) {
    ConditionReport rep;
    double gamma0 = std::min(coeffs.c1 - std::max(coeffs.b2 - coeffs.b1, 0.0),
                             coeffs.c2 - std::max(coeffs.b1 - coeffs.b2, 0.0));
    if (!coeffs.a.is_constant() || !(gamma0 > 0.0)) return rep;
    double a = coeffs.a.lambda1();
    auto [l, L] = bounds_lL(coeffs, src, grid, tg, mq);
    rep.applicable = true;
    rep.lhs = min_f_minus_ag(src, tg, a, mq);
    rep.rhs = a * coeffs.alpha * (L - l) * (2.0 + (coeffs.b1 + coeffs.b2) / gamma0);
    rep.margin = rep.lhs - rep.rhs;
    return rep;
}

TempDiffCheck temp_diff_linfty_check(const Trajectory& traj, const TimeSources& src,
                                     const Coefficients& coeffs, int mq) {
    TempDiffCheck out;
    if (coeffs.c1 != coeffs.c2 || coeffs.kappa1 != coeffs.kappa2) return out;
    // sign conditions h1 >= h2 >= 0 and theta10 >= theta20 >= 0
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        for (double t : sample_times(traj.tgrid, k, mq)) {
            ScalarField h1 = src.h1(t);
            ScalarField h2 = src.h2(t);
            for (size_t i = 0; i < h1.values.size(); ++i)
                if (h1.values[i] < h2.values[i] || h2.values[i] < 0.0) return out;
        }
    }
    for (size_t i = 0; i < src.theta1_init.values.size(); ++i)
        if (src.theta1_init.values[i] < src.theta2_init.values[i] ||
            src.theta2_init.values[i] < 0.0)
            return out;

    double diff_inf = 0.0;
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        const ScalarField& t1 = traj.theta1_at(k);
        const ScalarField& t2 = traj.theta2_at(k);
        for (size_t i = 0; i < t1.values.size(); ++i)
            diff_inf = std::max(diff_inf, std::abs(t1.values[i] - t2.values[i]));
    }
    double hdiff_inf = 0.0;
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        for (double t : sample_times(traj.tgrid, k, mq)) {
            ScalarField h1 = src.h1(t);
            ScalarField h2 = src.h2(t);
            for (size_t i = 0; i < h1.values.size(); ++i)
                hdiff_inf = std::max(hdiff_inf, std::abs(h1.values[i] - h2.values[i]));
        }
    }
    double init_inf = 0.0;
    for (size_t i = 0; i < src.theta1_init.values.size(); ++i)
        init_inf = std::max(init_inf,
                            std::abs(src.theta1_init.values[i] - src.theta2_init.values[i]));
    out.applicable = true;
    out.lhs = diff_inf;
    out.rhs = traj.tgrid.horizon * hdiff_inf + init_inf;
    out.slack = out.rhs - out.lhs;
    return out;
}

std::pair<double, double> very_weak_residual(const Trajectory& traj,
                                             const Coefficients& coeffs) {
    const Grid& grid = traj.theta1_init.grid;
    double tau = traj.tgrid.tau();
    SparseMatrix stiff1 =
        assemble_neumann_helmholtz(grid, coeffs.kappa1, ScalarField::constant(grid, 0.0));
    SparseMatrix stiff2 =
        assemble_neumann_helmholtz(grid, coeffs.kappa2, ScalarField::constant(grid, 0.0));
    double r_sum = 0.0, r_diff = 0.0;
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        const EllipticState& st = traj.states[k - 1];
        const Sources& sk = traj.step_sources[k - 1];
        auto lap1 = apply_weighted_operator(stiff1, grid, st.theta1.values);
        auto lap2 = apply_weighted_operator(stiff2, grid, st.theta2.values);
        for (int i = 0; i < grid.node_count(); ++i) {
            double dt1 = (st.theta1.values[i] - traj.theta1_at(k - 1).values[i]) / tau;
            double dt2 = (st.theta2.values[i] - traj.theta2_at(k - 1).values[i]) / tau;
            double ex = (st.theta1.values[i] - st.theta2.values[i]) * st.chi.values[i];
            double rate1 = sk.h1.values[i] - coeffs.b1 * ex - lap1[i] - coeffs.c1 * st.theta1.values[i];
            double rate2 = sk.h2.values[i] + coeffs.b2 * ex - lap2[i] - coeffs.c2 * st.theta2.values[i];
            double d1 = dt1 - rate1;
            double d2 = dt2 - rate2;
            r_sum = std::max(r_sum, std::abs(coeffs.b2 * d1 + coeffs.b1 * d2));
            r_diff = std::max(r_diff, std::abs(coeffs.b2 * d1 - coeffs.b1 * d2));
        }
    }
    return {r_sum, r_diff};
}

double theta1_recursion_violation(const Trajectory& traj, const Coefficients& coeffs) {
    double tau = traj.tgrid.tau();
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        double lhs = traj.theta1_at(k).max_abs();
        double bound = tau / (tau * coeffs.c1 + 1.0) * traj.step_sources[k - 1].h1.max_abs() +
                       1.0 / (tau * coeffs.c1 + 1.0) * traj.theta1_at(k - 1).max_abs();
        worst = std::max(worst, lhs - bound);
    }
    return worst;
}

}  // namespace thermoqvi
