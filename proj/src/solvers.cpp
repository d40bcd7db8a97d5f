#include "thermoqvi/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoqvi {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b, double tol,
                  int max_iter, const std::vector<double>* x0) {
    if (!(tol > 0.0)) throw std::invalid_argument("cg_solve: need tol > 0");
    if (static_cast<int>(b.size()) != A.n)
        throw std::invalid_argument("cg_solve: dimension mismatch");

    CgResult out;
    out.x = x0 ? *x0 : std::vector<double>(b.size(), 0.0);
    std::vector<double> r(b.size()), p(b.size()), Ap(b.size());
    A.multiply(out.x, r);
    for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - r[i];
    p = r;
    double target = tol * std::max(1.0, norm2(b));
    double rr = dot(r, r);
    out.stats.residual = std::sqrt(rr);
    if (out.stats.residual <= target) {
        out.stats.converged = true;
        return out;
    }
    for (int it = 1; it <= max_iter; ++it) {
        A.multiply(p, Ap);
        double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) break;  // not SPD or p exhausted
        double step = rr / pAp;
        for (size_t i = 0; i < b.size(); ++i) {
            out.x[i] += step * p[i];
            r[i] -= step * Ap[i];
        }
        double rr_new = dot(r, r);
        out.stats.iterations = it;
        out.stats.residual = std::sqrt(rr_new);
        if (out.stats.residual <= target) {
            out.stats.converged = true;
            return out;
        }
        for (size_t i = 0; i < b.size(); ++i) p[i] = r[i] + (rr_new / rr) * p[i];
        rr = rr_new;
    }
    // recompute the true residual; rounding may have drifted the recurrence
    A.multiply(out.x, Ap);
    for (size_t i = 0; i < b.size(); ++i) Ap[i] = b[i] - Ap[i];
    out.stats.residual = norm2(Ap);
    out.stats.converged = out.stats.residual <= target;
    return out;
}

double lcp_residual(const LcpProblem& p, const std::vector<double>& x) {
    auto Ax = p.A.multiply(x);
    double worst = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double slack = p.psi[i] == kNoBound ? kNoBound : p.psi[i] - x[i];
        double r = std::min(slack, p.b[i] - Ax[i]);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

PsorResult psor_solve(const LcpProblem& p, double omega, double tol, int max_iter,
                      const std::vector<double>* x0) {
    if (!(omega > 0.0) || !(omega < 2.0))
        throw std::invalid_argument("psor_solve: need omega in (0,2)");
    size_t n = p.b.size();
    if (p.A.n != static_cast<int>(n) || p.psi.size() != n)
        throw std::invalid_argument("psor_solve: dimension mismatch");

    PsorResult out;
    out.x.assign(n, 0.0);
    if (x0) {
        out.x = *x0;
        for (size_t i = 0; i < n; ++i)
            if (p.psi[i] != kNoBound) out.x[i] = std::min(out.x[i], p.psi[i]);
    }
    double b_inf = 0.0;
    for (double v : p.b) b_inf = std::max(b_inf, std::abs(v));
    double target = tol * (1.0 + b_inf);

    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        for (size_t i = 0; i < n; ++i) {
            double s = 0.0, diag = 0.0;
            for (int k = p.A.row_ptr[i]; k < p.A.row_ptr[i + 1]; ++k) {
                int j = p.A.col_idx[k];
                if (j == static_cast<int>(i))
                    diag = p.A.vals[k];
                else
                    s += p.A.vals[k] * out.x[j];
            }
            double gs = (p.b[i] - s) / diag;
            double xi = out.x[i] + omega * (gs - out.x[i]);
            if (p.psi[i] != kNoBound) xi = std::min(xi, p.psi[i]);
            out.x[i] = xi;
        }
        out.stats.iterations = sweep;
        out.stats.residual = lcp_residual(p, out.x);
        if (out.stats.residual <= target) {
            out.stats.converged = true;
            return out;
        }
    }
    out.stats.converged = false;
    return out;
}

}  // namespace thermoqvi
