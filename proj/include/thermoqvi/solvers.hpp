#pragma once

#include <limits>
#include <vector>

#include "thermoqvi/sparse.hpp"

namespace thermoqvi {

constexpr double kNoBound = std::numeric_limits<double>::infinity();

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct CgResult {
    std::vector<double> x;
    SolveStats stats;
};

/// Conjugate gradients for SPD systems. Stops when
/// ||Ax - b||_2 <= tol * max(1, ||b||_2). Non-convergence is reported
/// through stats.converged, never thrown.
CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                  double tol, int max_iter,
                  const std::vector<double>* x0 = nullptr);

/// Upper-obstacle linear complementarity problem
///   x <= psi,  (Ax - b)_i <= 0,  x_i < psi_i  =>  (Ax - b)_i = 0.
/// psi entries equal to kNoBound mean "no bound at this index".
struct LcpProblem {
    SparseMatrix A;
    std::vector<double> b;
    std::vector<double> psi;
};

/// Componentwise min-form complementarity residual
/// max_i |min(psi_i - x_i, b_i - (Ax)_i)|; zero at an exact solution.
double lcp_residual(const LcpProblem& p, const std::vector<double>& x);

struct PsorResult {
    std::vector<double> x;
    SolveStats stats;
};

/// Projected SOR: ascending-index Gauss-Seidel sweep with immediate
/// projection x_i <- min(x_i, psi_i). Requires an SPD matrix with positive
/// diagonal and omega in (0,2). Converged when the min-form residual
/// drops below tol * (1 + ||b||_inf); the bound x <= psi holds exactly at
/// every iterate.
PsorResult psor_solve(const LcpProblem& p, double omega, double tol,
                      int max_iter, const std::vector<double>* x0 = nullptr);

}  // namespace thermoqvi
