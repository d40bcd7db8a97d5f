#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thermoqvi/checks.hpp"
#include "thermoqvi/config.hpp"
#include "thermoqvi/io.hpp"

namespace fs = std::filesystem;
using namespace thermoqvi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

int thread_count() {
    const char* env = std::getenv("THERMOQVI_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

void print_checks(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.applicable)
            std::cout << "  [n/a ] " << r.name << '\n';
        else
            std::cout << "  [" << (r.pass ? "pass" : "FAIL") << "] " << r.name
                      << "  measured=" << format_double(r.measured)
                      << " threshold=" << format_double(r.threshold) << '\n';
    }
}

int run_solve_elliptic(const std::string& config_path, const std::string& out_dir, bool vtk) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }
    fs::path out = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
    if (out.empty()) {
        std::cerr << "config error: no output directory (use --out or output.dir)\n";
        return kExitUsage;
    }
    try {
        Grid grid = cfg.make_grid();
        Sources src = cfg.make_sources(grid);
        std::cout << "solve-elliptic: grid dim=" << grid.dim << " n=" << grid.n
                  << " config_hash=" << cfg.hash << " threads=" << thread_count() << '\n';
        EllipticState state =
            continuation_solve(grid, cfg.coeffs, src, cfg.schedule, cfg.solver, cfg.contact);
        fs::create_directories(out);
        write_text_file(out / "scenario.cfg", cfg.raw_text);
        write_state(out, state, cfg.coeffs, src, cfg.hash, vtk);
        auto checks = run_elliptic_checks(state, cfg.coeffs, src, cfg.checks);
        write_text_file(out / "checks.csv", scorecard_csv(checks));
        print_checks(checks);
        if (!state.report.converged) {
            std::cerr << "solver did not converge (residual "
                      << format_double(state.report.residual) << ")\n";
            return kExitNoConvergence;
        }
        std::cout << "converged, outputs in " << out.string() << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitNoConvergence;
    }
}

int run_solve_quasistatic(const std::string& config_path, const std::string& out_dir, bool vtk) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }
    fs::path out = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
    if (out.empty()) {
        std::cerr << "config error: no output directory (use --out or output.dir)\n";
        return kExitUsage;
    }
    try {
        if (!cfg.has_time)
            throw ConfigError("quasistatic run needs time.T and time.N");
        Grid grid = cfg.make_grid();
        TimeSources src = cfg.make_time_sources(grid);
        std::cout << "solve-quasistatic: grid dim=" << grid.dim << " n=" << grid.n
                  << " N=" << cfg.tgrid.steps << " T=" << format_double(cfg.tgrid.horizon)
                  << " config_hash=" << cfg.hash << " threads=" << thread_count() << '\n';
        Trajectory traj = run_quasistatic(src, grid, cfg.tgrid, cfg.coeffs, cfg.schedule,
                                          cfg.solver, cfg.contact, cfg.mq);
        fs::create_directories(out);
        write_text_file(out / "scenario.cfg", cfg.raw_text);
        write_trajectory(out, traj, cfg.hash, vtk);
        auto checks = run_quasistatic_checks(traj, cfg.coeffs, src, cfg.checks);
        write_text_file(out / "checks.csv", scorecard_csv(checks));
        print_checks(checks);
        bool all_converged = true;
        for (const EllipticState& st : traj.states) all_converged &= st.report.converged;
        if (!all_converged) {
            std::cerr << "one or more steps did not converge\n";
            return kExitNoConvergence;
        }
        std::cout << "converged, outputs in " << out.string() << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitNoConvergence;
    }
}

int run_verify(const std::string& in_dir) {
    fs::path dir(in_dir);
    if (!fs::exists(dir / "scenario.cfg") || !fs::exists(dir / "checks.csv")) {
        std::cerr << "verify: " << in_dir << " does not hold a solver output\n";
        return kExitUsage;
    }
    try {
        ScenarioConfig cfg = parse_config_text(read_text_file(dir / "scenario.cfg"));
        Grid grid = cfg.make_grid();
        std::vector<CheckResult> checks;
        if (fs::exists(dir / "trajectory.csv")) {
            Trajectory traj = read_trajectory(dir);
            TimeSources src = cfg.make_time_sources(grid);
            traj.step_sources = clement_sources(src, traj.tgrid, cfg.mq);
            checks = run_quasistatic_checks(traj, cfg.coeffs, src, cfg.checks);
        } else {
            EllipticState state = read_state(dir);
            if (state.theta1.grid != grid)
                throw std::runtime_error("stored fields do not match the scenario grid");
            Sources src = cfg.make_sources(grid);
            checks = run_elliptic_checks(state, cfg.coeffs, src, cfg.checks);
        }
        std::string fresh = scorecard_csv(checks);
        std::string stored = read_text_file(dir / "checks.csv");
        print_checks(checks);
        if (fresh == stored)
            std::cout << "scorecard reproduced byte-for-byte\n";
        else
            std::cout << "scorecard differs from the stored checks.csv\n";
        return all_applicable_pass(checks) ? kExitOk : kExitChecksFailed;
    } catch (const std::exception& e) {
        std::cerr << "verify error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermoqvi: coupled membrane-mould contact solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_dir;
    bool vtk = false;

    CLI::App* elliptic = app.add_subcommand("solve-elliptic", "solve the stationary system");
    elliptic->add_option("--config", config_path, "scenario config file")->required();
    elliptic->add_option("--out", out_dir, "output directory");
    elliptic->add_flag("--vtk", vtk, "also write legacy-VTK structured-points files");

    CLI::App* quasi = app.add_subcommand("solve-quasistatic", "solve the evolutionary system");
    quasi->add_option("--config", config_path, "scenario config file")->required();
    quasi->add_option("--out", out_dir, "output directory");
    quasi->add_flag("--vtk", vtk, "also write legacy-VTK structured-points files");

    CLI::App* verify = app.add_subcommand("verify", "re-run the checks on persisted output");
    verify->add_option("--in", in_dir, "solver output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (elliptic->parsed()) return run_solve_elliptic(config_path, out_dir, vtk);
    if (quasi->parsed()) return run_solve_quasistatic(config_path, out_dir, vtk);
    return run_verify(in_dir);
}
