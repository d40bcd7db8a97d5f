#include "thermoqvi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thermoqvi {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field_csv(const ScalarField& field) {
    const Grid& g = field.grid;
    std::ostringstream os;
    if (g.dim == 1) {
        os << "i,x,value\n";
        for (int i = 0; i <= g.n; ++i)
            os << i << ',' << format_double(g.x(i)) << ',' << format_double(field.values[i])
               << '\n';
    } else {
        os << "i,j,x,y,value\n";
        for (int j = 0; j <= g.n; ++j)
            for (int i = 0; i <= g.n; ++i)
                os << i << ',' << j << ',' << format_double(g.x(i)) << ','
                   << format_double(g.y(j)) << ',' << format_double(field.values[g.index(i, j)])
                   << '\n';
    }
    return os.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_field_csv(const fs::path& path, const ScalarField& field) {
    write_text_file(path, field_csv(field));
}

ScalarField read_field_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read field file " + path.string());
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty field file " + path.string());
    int dim;
    if (header == "i,x,value")
        dim = 1;
    else if (header == "i,j,x,y,value")
        dim = 2;
    else
        throw std::runtime_error("unrecognized field header in " + path.string());

    std::vector<double> values;
    std::string line;
    int max_i = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) != (dim == 1 ? 3 : 5))
            throw std::runtime_error("malformed row in " + path.string());
        max_i = std::max(max_i, std::stoi(cells[0]));
        values.push_back(std::stod(cells.back()));
    }
    Grid g = build_grid(dim, max_i);
    if (static_cast<int>(values.size()) != g.node_count())
        throw std::runtime_error("row count does not match grid in " + path.string());
    ScalarField f(g);
    f.values = std::move(values);
    f.validate();
    return f;
}

void write_field_vtk(const fs::path& path, const ScalarField& field, const std::string& name) {
    const Grid& g = field.grid;
    std::ostringstream os;
    os << "# vtk DataFile Version 3.0\n" << name << "\nASCII\nDATASET STRUCTURED_POINTS\n";
    int m = g.nodes_per_axis();
    os << "DIMENSIONS " << m << ' ' << (g.dim == 2 ? m : 1) << " 1\n";
    os << "ORIGIN 0 0 0\nSPACING " << format_double(g.h) << ' ' << format_double(g.h) << " 1\n";
    os << "POINT_DATA " << g.node_count() << "\nSCALARS " << name
       << " double 1\nLOOKUP_TABLE default\n";
    for (double v : field.values) os << format_double(v) << '\n';
    write_text_file(path, os.str());
}

namespace {

const char* kStateFields[] = {"theta1", "theta2", "phi", "u", "chi", "chi_relaxed"};

const ScalarField& state_field(const EllipticState& s, int k) {
    switch (k) {
        case 0: return s.theta1;
        case 1: return s.theta2;
        case 2: return s.phi;
        case 3: return s.u;
        case 4: return s.chi;
        default: return s.chi_relaxed;
    }
}

ScalarField& state_field(EllipticState& s, int k) {
    return const_cast<ScalarField&>(state_field(static_cast<const EllipticState&>(s), k));
}

void write_state_fields(const fs::path& dir, const EllipticState& state, bool vtk) {
    for (int k = 0; k < 6; ++k) {
        write_field_csv(dir / (std::string(kStateFields[k]) + ".csv"), state_field(state, k));
        if (vtk)
            write_field_vtk(dir / (std::string(kStateFields[k]) + ".vtk"),
                            state_field(state, k), kStateFields[k]);
    }
}

nlohmann::ordered_json report_json(const EllipticState& state) {
    nlohmann::ordered_json j;
    j["converged"] = state.report.converged;
    j["residual"] = state.report.residual;
    j["eps_reached"] = state.report.eps_reached;
    j["total_sweeps"] = state.report.total_sweeps;
    j["damping_used"] = state.report.damping_used;
    j["delta_contact"] = state.delta_contact;
    auto stages = nlohmann::ordered_json::array();
    for (const StageInfo& s : state.report.stages) {
        stages.push_back({{"eps", s.eps},
                          {"sweeps", s.sweeps},
                          {"residual", s.residual},
                          {"converged", s.converged}});
    }
    j["stages"] = stages;
    return j;
}

}  // namespace

void write_state(const fs::path& dir, const EllipticState& state, const Coefficients& coeffs,
                 const Sources& src, const std::string& config_hash, bool vtk) {
    fs::create_directories(dir);
    write_state_fields(dir, state, vtk);

    nlohmann::ordered_json j = report_json(state);
    j["config_hash"] = config_hash;
    auto [m, M] = bounds_mM(coeffs, src.h1, src.h2);
    j["m"] = m;
    j["M"] = M;
    NondegeneracyReport nd = nondegeneracy_check(state, coeffs, src);
    j["nondegeneracy"] = {{"pointwise_applicable", nd.pointwise.applicable},
                          {"pointwise_margin", nd.pointwise.margin},
                          {"sufficient_applicable", nd.sufficient.applicable},
                          {"sufficient_margin", nd.sufficient.margin},
                          {"k_grad", nd.sufficient.k_grad}};
    ConditionReport uq = uniqueness_check(coeffs, src.f, src.g, m, M);
    j["uniqueness"] = {{"applicable", uq.applicable}, {"margin", uq.margin}};
    write_text_file(dir / "report.json", j.dump(2) + "\n");
}

EllipticState read_state(const fs::path& dir) {
    EllipticState state;
    for (int k = 0; k < 6; ++k)
        state_field(state, k) = read_field_csv(dir / (std::string(kStateFields[k]) + ".csv"));
    for (int k : {2, 3}) {
        state_field(state, k).kind = FieldKind::zero_trace;
        state_field(state, k).validate();
    }
    auto j = nlohmann::json::parse(read_text_file(dir / "report.json"));
    state.report.converged = j.at("converged").get<bool>();
    state.report.residual = j.at("residual").get<double>();
    state.report.eps_reached = j.at("eps_reached").get<double>();
    state.report.total_sweeps = j.at("total_sweeps").get<int>();
    state.delta_contact = j.at("delta_contact").get<double>();
    return state;
}

void write_trajectory(const fs::path& dir, const Trajectory& traj,
                      const std::string& config_hash, bool vtk) {
    fs::create_directories(dir);
    write_field_csv(dir / "theta1_init.csv", traj.theta1_init);
    write_field_csv(dir / "theta2_init.csv", traj.theta2_init);

    std::ostringstream os;
    os << "k,t,||theta1||_inf,||theta1-theta2||_inf,contact_fraction,residual\n";
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        const EllipticState& st = traj.states[k - 1];
        fs::path step_dir = dir / ("step_" + std::to_string(k));
        fs::create_directories(step_dir);
        write_state_fields(step_dir, st, vtk);
        write_text_file(step_dir / "report.json", report_json(st).dump(2) + "\n");

        double diff = 0.0;
        for (size_t i = 0; i < st.theta1.values.size(); ++i)
            diff = std::max(diff, std::abs(st.theta1.values[i] - st.theta2.values[i]));
        os << k << ',' << format_double(traj.tgrid.time(k)) << ','
           << format_double(st.theta1.max_abs()) << ',' << format_double(diff) << ','
           << format_double(integrate(st.chi)) << ',' << format_double(st.report.residual)
           << '\n';
    }
    write_text_file(dir / "trajectory.csv", os.str());

    nlohmann::ordered_json j;
    j["config_hash"] = config_hash;
    j["T"] = traj.tgrid.horizon;
    j["N"] = traj.tgrid.steps;
    write_text_file(dir / "run.json", j.dump(2) + "\n");
}

Trajectory read_trajectory(const fs::path& dir) {
    Trajectory traj;
    auto j = nlohmann::json::parse(read_text_file(dir / "run.json"));
    traj.tgrid.horizon = j.at("T").get<double>();
    traj.tgrid.steps = j.at("N").get<int>();
    traj.theta1_init = read_field_csv(dir / "theta1_init.csv");
    traj.theta2_init = read_field_csv(dir / "theta2_init.csv");
    for (int k = 1; k <= traj.tgrid.steps; ++k) {
        fs::path step_dir = dir / ("step_" + std::to_string(k));
        traj.states.push_back(read_state(step_dir));
    }
    return traj;
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace thermoqvi
