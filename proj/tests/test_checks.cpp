#include <doctest.h>

#include <set>

#include "thermoqvi/checks.hpp"
#include "thermoqvi/io.hpp"

using namespace thermoqvi;

namespace {

Coefficients benchmark_coeffs() {
    Coefficients c;
    c.c1 = c.c2 = 1.0;
    c.b1 = c.b2 = 1.0;
    c.alpha = 1.0;
    return c;
}

Sources benchmark_sources(const Grid& g) {
    return {ScalarField::constant(g, 32.0), ScalarField::constant(g, 1.0),
            ScalarField::constant(g, 3.0), ScalarField::constant(g, 0.0)};
}

}  // namespace

TEST_CASE("elliptic scorecard: manifest, all-zero data, benchmark") {
    Grid g = build_grid(1, 32);
    Coefficients c = benchmark_coeffs();

    SUBCASE("all-zero data passes every applicable check with measured 0") {
        Sources zero{ScalarField::constant(g, 0.0), ScalarField::constant(g, 0.0),
                     ScalarField::constant(g, 0.0), ScalarField::constant(g, 0.0)};
        EllipticState st = continuation_solve(g, c, zero, RegSchedule{});
        auto checks = run_elliptic_checks(st, c, zero);
        CHECK(all_applicable_pass(checks));
        for (const CheckResult& r : checks)
            if (r.applicable && r.threshold > 0.0) CHECK(r.measured <= 1e-12);
    }
    SUBCASE("benchmark passes everything and covers the manifest exactly") {
        Sources src = benchmark_sources(g);
        EllipticState st = continuation_solve(g, c, src, RegSchedule{});
        auto checks = run_elliptic_checks(st, c, src);
        CHECK(all_applicable_pass(checks));
        std::vector<std::string> names;
        for (const CheckResult& r : checks) names.push_back(r.name);
        CHECK(names == elliptic_check_manifest());
        std::set<std::string> unique(names.begin(), names.end());
        CHECK(unique.size() == names.size());
    }
    SUBCASE("violated comparison precondition marks the check inapplicable") {
        Coefficients cb = benchmark_coeffs();
        cb.c1 = 2.0;
        cb.kappa2 = 4.0;  // c2/k2 = 0.25 < c1/k1 = 2
        Sources src = benchmark_sources(g);
        EllipticState st = continuation_solve(g, cb, src, RegSchedule{});
        auto checks = run_elliptic_checks(st, cb, src);
        bool found = false;
        for (const CheckResult& r : checks)
            if (r.name == "temperature_ordering") {
                CHECK(!r.applicable);
                found = true;
            }
        CHECK(found);
        CHECK(all_applicable_pass(checks));
    }
}

TEST_CASE("scorecard determinism: identical csv bytes run to run") {
    Grid g = build_grid(1, 32);
    Coefficients c = benchmark_coeffs();
    Sources src = benchmark_sources(g);
    auto run_once = [&]() {
        EllipticState st = continuation_solve(g, c, src, RegSchedule{});
        return scorecard_csv(run_elliptic_checks(st, c, src));
    };
    std::string a = run_once();
    std::string b = run_once();
    CHECK(a == b);
    CHECK(a.find("name,applicable,measured,threshold,pass,anchor\n") == 0);
}

TEST_CASE("quasistatic scorecard") {
    Grid g = build_grid(1, 16);
    Coefficients c = benchmark_coeffs();
    TimeSources src;
    src.f = TimeSources::constant_in_time(ScalarField::constant(g, 32.0));
    src.g = TimeSources::constant_in_time(ScalarField::constant(g, 1.0));
    src.h1 = TimeSources::constant_in_time(ScalarField::constant(g, 3.0));
    src.h2 = TimeSources::constant_in_time(ScalarField::constant(g, 0.0));
    src.theta1_init = ScalarField::constant(g, 2.0);
    src.theta2_init = ScalarField::constant(g, 1.0);

    SUBCASE("constant benchmark passes; manifest covered") {
        Trajectory traj = run_quasistatic(src, g, TimeGrid{0.5, 8}, c, RegSchedule{});
        auto checks = run_quasistatic_checks(traj, c, src);
        std::vector<std::string> names;
        for (const CheckResult& r : checks) names.push_back(r.name);
        CHECK(names == quasistatic_check_manifest());
        CHECK(all_applicable_pass(checks));
    }
    SUBCASE("N=1: the gap-rate check is inapplicable") {
        Trajectory traj = run_quasistatic(src, g, TimeGrid{0.5, 1}, c, RegSchedule{});
        auto checks = run_quasistatic_checks(traj, c, src);
        for (const CheckResult& r : checks)
            if (r.name == "interpolant_gap_rate") CHECK(!r.applicable);
        CHECK(all_applicable_pass(checks));
    }
    SUBCASE("decay data exercises the gap-rate window") {
        TimeSources decay = src;
        decay.h1 = TimeSources::constant_in_time(ScalarField::constant(g, 0.0));
        decay.h2 = TimeSources::constant_in_time(ScalarField::constant(g, 0.0));
        decay.theta1_init = ScalarField::constant(g, 2.0);
        decay.theta2_init = ScalarField::constant(g, 0.0);
        Trajectory traj = run_quasistatic(decay, g, TimeGrid{1.0, 16}, c, RegSchedule{});
        auto checks = run_quasistatic_checks(traj, c, decay);
        for (const CheckResult& r : checks)
            if (r.name == "interpolant_gap_rate") {
                REQUIRE(r.applicable);
                CHECK(r.pass);
            }
    }
}

TEST_CASE("perturbation_contraction") {
    Grid g = build_grid(1, 32);
    Coefficients c = benchmark_coeffs();
    Sources src = benchmark_sources(g);
    SUBCASE("zero amplitude: zero differences") {
        CheckResult r = perturbation_contraction(g, c, src, PerturbationKind::h1_shift, 0.0,
                                                 RegSchedule{});
        CHECK(r.pass);
        CHECK(r.measured <= 1e-12);
    }
    SUBCASE("h1 and h2 shifts keep the slack nonnegative") {
        for (PerturbationKind kind :
             {PerturbationKind::h1_shift, PerturbationKind::h2_shift}) {
            CheckResult r = perturbation_contraction(g, c, src, kind, 0.01, RegSchedule{});
            CHECK(r.applicable);
            CHECK(r.pass);
        }
    }
    SUBCASE("forced chi override") {
        CheckResult r = perturbation_contraction(g, c, src, PerturbationKind::chi_override,
                                                 0.5, RegSchedule{});
        CHECK(r.applicable);
        CHECK(r.pass);
    }
    SUBCASE("seed changes the perturbation but not the verdict") {
        CheckParams p1;
        p1.seed = 1;
        CheckParams p2;
        p2.seed = 2;
        CheckResult a = perturbation_contraction(g, c, src, PerturbationKind::h1_shift, 0.01,
                                                 RegSchedule{}, SolverParams{}, ContactParams{},
                                                 p1);
        CheckResult b = perturbation_contraction(g, c, src, PerturbationKind::h1_shift, 0.01,
                                                 RegSchedule{}, SolverParams{}, ContactParams{},
                                                 p2);
        CHECK(a.pass);
        CHECK(b.pass);
    }
}

TEST_CASE("state export and re-read round trip") {
    namespace fs = std::filesystem;
    Grid g = build_grid(1, 16);
    Coefficients c = benchmark_coeffs();
    Sources src = benchmark_sources(g);
    EllipticState st = continuation_solve(g, c, src, RegSchedule{});
    fs::path dir = fs::temp_directory_path() / "thermoqvi_state_test";
    fs::remove_all(dir);
    write_state(dir, st, c, src, "deadbeef");
    EllipticState back = read_state(dir);
    CHECK(max_abs_diff(back.theta1, st.theta1) == 0.0);
    CHECK(max_abs_diff(back.u, st.u) == 0.0);
    CHECK(back.delta_contact == st.delta_contact);
    // the recomputed scorecard is identical
    auto before = scorecard_csv(run_elliptic_checks(st, c, src));
    auto after = scorecard_csv(run_elliptic_checks(back, c, src));
    CHECK(before == after);
    fs::remove_all(dir);
}
