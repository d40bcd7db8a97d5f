#pragma once

#include <string>
#include <vector>

#include "thermoqvi/quasistatic.hpp"

namespace thermoqvi {

/// Outcome of one analytic check. Inapplicable results carry measured = 0
/// and record why in the anchor suffix; they never count as failures.
struct CheckResult {
    std::string name;
    bool applicable = false;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string anchor;
};

struct CheckParams {
    double tol = 1e-8;        // base tolerance; thresholds are tol*(1+scale)
    double ls_threshold = 0.0;  // >0 overrides the Lewy-Stampacchia threshold
    unsigned seed = 12345;    // perturbation RNG
};

/// Frozen manifest of the stationary scorecard, in emission order.
std::vector<std::string> elliptic_check_manifest();
/// Frozen manifest of the evolutionary scorecard, in emission order.
std::vector<std::string> quasistatic_check_manifest();

/// Every stationary analytic check against one converged state, in
/// manifest order. Checks never throw on a failed inequality; they
/// accumulate.
std::vector<CheckResult> run_elliptic_checks(const EllipticState& state,
                                             const Coefficients& coeffs, const Sources& src,
                                             const CheckParams& params = {});

/// Every evolutionary analytic check against one trajectory, in manifest
/// order.
std::vector<CheckResult> run_quasistatic_checks(const Trajectory& traj,
                                                const Coefficients& coeffs,
                                                const TimeSources& src,
                                                const CheckParams& params = {});

enum class PerturbationKind { h1_shift, h2_shift, chi_override };

/// Solves the base and a perturbed problem and checks the L1
/// continuous-dependence inequality (and, when the uniqueness margin is
/// positive, the contraction ratio of the constant chain within factor 2).
CheckResult perturbation_contraction(const Grid& grid, const Coefficients& coeffs,
                                     const Sources& base, PerturbationKind kind,
                                     double amplitude, const RegSchedule& schedule,
                                     const SolverParams& solver = {},
                                     const ContactParams& contact = {},
                                     const CheckParams& params = {});

/// Renders the scorecard rows as checks.csv content (17 significant
/// digits, deterministic).
std::string scorecard_csv(const std::vector<CheckResult>& results);

bool all_applicable_pass(const std::vector<CheckResult>& results);

}  // namespace thermoqvi
