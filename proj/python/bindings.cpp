#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thermoqvi/checks.hpp"
#include "thermoqvi/config.hpp"

namespace py = pybind11;
using namespace thermoqvi;

namespace {

py::array_t<double> field_array(const ScalarField& f) {
    py::array_t<double> out(static_cast<py::ssize_t>(f.values.size()));
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

ScalarField field_from_array(const Grid& g, py::array_t<double, py::array::c_style> arr,
                             FieldKind kind) {
    if (arr.size() != g.node_count())
        throw std::invalid_argument("array length must equal the grid node count");
    ScalarField f(g, kind);
    std::copy(arr.data(), arr.data() + arr.size(), f.values.begin());
    f.validate();
    return f;
}

ScalarField to_field(const Grid& grid, py::object obj, FieldKind kind = FieldKind::free_field) {
    if (py::isinstance<ScalarField>(obj)) return obj.cast<ScalarField>();
    if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj))
        return ScalarField::constant(grid, obj.cast<double>(), kind);
    return field_from_array(grid, obj.cast<py::array_t<double, py::array::c_style>>(), kind);
}

FieldGenerator wrap_generator(const Grid& grid, py::object gen) {
    if (py::isinstance<py::function>(gen)) {
        py::function fn = gen.cast<py::function>();
        return [fn, grid](double t) {
            py::gil_scoped_acquire acquire;
            return to_field(grid, fn(t));
        };
    }
    ScalarField f = to_field(grid, gen);
    return [f](double) { return f; };
}

py::dict stats_dict(const SolveStats& s) {
    py::dict d;
    d["iterations"] = s.iterations;
    d["residual"] = s.residual;
    d["converged"] = s.converged;
    return d;
}

py::dict check_dict(const CheckResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["applicable"] = r.applicable;
    d["measured"] = r.measured;
    d["threshold"] = r.threshold;
    d["pass"] = r.pass;
    d["anchor"] = r.anchor;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coupled membrane-mould contact solver core";

    py::class_<Grid>(m, "Grid")
        .def_readonly("dim", &Grid::dim)
        .def_readonly("n", &Grid::n)
        .def_readonly("h", &Grid::h)
        .def_property_readonly("node_count", &Grid::node_count)
        .def("__repr__", [](const Grid& g) {
            return "Grid(dim=" + std::to_string(g.dim) + ", n=" + std::to_string(g.n) + ")";
        });
    m.def("build_grid", &build_grid, py::arg("dim"), py::arg("n"));

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init([](const Grid& g, py::object values) {
                 return to_field(g, values);
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", [](const ScalarField& f) { return f.grid; })
        .def_property_readonly("array", &field_array)
        .def("max", &ScalarField::max)
        .def("min", &ScalarField::min)
        .def("max_abs", &ScalarField::max_abs);
    m.def("constant_field", [](const Grid& g, double v) { return ScalarField::constant(g, v); },
          py::arg("grid"), py::arg("value"));
    m.def("integrate", &integrate, py::arg("field"));

    py::class_<CoefficientFunction>(m, "CoefficientFunction")
        .def_static("constant", &CoefficientFunction::constant, py::arg("value"))
        .def_static("table", &CoefficientFunction::table, py::arg("abscissae"), py::arg("values"))
        .def("__call__", &CoefficientFunction::operator())
        .def_property_readonly("lambda1", &CoefficientFunction::lambda1)
        .def_property_readonly("lambda2", &CoefficientFunction::lambda2)
        .def_property_readonly("is_constant", &CoefficientFunction::is_constant);

    py::class_<Coefficients>(m, "Coefficients")
        .def(py::init([](double kappa1, double kappa2, double c1, double c2, double b1,
                         double b2, double alpha, CoefficientFunction a) {
                 Coefficients c{kappa1, kappa2, c1, c2, b1, b2, alpha, a};
                 c.validate();
                 return c;
             }),
             py::arg("kappa1") = 1.0, py::arg("kappa2") = 1.0, py::arg("c1") = 1.0,
             py::arg("c2") = 1.0, py::arg("b1") = 0.0, py::arg("b2") = 0.0,
             py::arg("alpha") = 1.0, py::arg("a") = CoefficientFunction::constant(1.0))
        .def_readwrite("kappa1", &Coefficients::kappa1)
        .def_readwrite("kappa2", &Coefficients::kappa2)
        .def_readwrite("c1", &Coefficients::c1)
        .def_readwrite("c2", &Coefficients::c2)
        .def_readwrite("b1", &Coefficients::b1)
        .def_readwrite("b2", &Coefficients::b2)
        .def_readwrite("alpha", &Coefficients::alpha)
        .def_readwrite("a", &Coefficients::a);

    py::class_<SolverParams>(m, "SolverParams")
        .def(py::init<>())
        .def_readwrite("lin_tol", &SolverParams::lin_tol)
        .def_readwrite("pair_tol", &SolverParams::pair_tol)
        .def_readwrite("psor_tol", &SolverParams::psor_tol)
        .def_readwrite("omega", &SolverParams::omega)
        .def_readwrite("fp_tol", &SolverParams::fp_tol)
        .def_readwrite("fp_max_outer", &SolverParams::fp_max_outer)
        .def_readwrite("fp_damping", &SolverParams::fp_damping);

    py::class_<ContactParams>(m, "ContactParams")
        .def(py::init<>())
        .def_readwrite("delta_contact", &ContactParams::delta_contact)
        .def_readwrite("omega", &ContactParams::omega)
        .def_readwrite("tol", &ContactParams::tol)
        .def_readwrite("max_iter", &ContactParams::max_iter);

    py::class_<RegSchedule>(m, "RegSchedule")
        .def(py::init<>())
        .def_readwrite("eps0", &RegSchedule::eps0)
        .def_readwrite("factor", &RegSchedule::factor)
        .def_readwrite("eps_min", &RegSchedule::eps_min);

    m.def("coercivity_margin", &coercivity_margin, py::arg("coeffs"), py::arg("sigma_inf"));
    m.def("bounds_mM", &bounds_mM, py::arg("coeffs"), py::arg("h1"), py::arg("h2"));
    m.def("chi_eps", &chi_eps, py::arg("s"), py::arg("eps"));

    m.def(
        "solve_pair",
        [](const Grid& grid, const Coefficients& coeffs, py::object h1, py::object h2,
           py::object sigma, const SolverParams& params) {
            PairSolution sol = solve_pair(grid, coeffs, to_field(grid, h1), to_field(grid, h2),
                                          to_field(grid, sigma), params);
            return py::make_tuple(sol.theta1, sol.theta2, stats_dict(sol.stats));
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("h1"), py::arg("h2"), py::arg("sigma"),
        py::arg("params") = SolverParams{});

    m.def(
        "solve_mould",
        [](const Grid& grid, double alpha, const ScalarField& theta1, const ScalarField& theta2,
           py::object chi, py::object g, const SolverParams& params) {
            return solve_mould(grid, alpha, theta1, theta2, to_field(grid, chi),
                               to_field(grid, g), params);
        },
        py::arg("grid"), py::arg("alpha"), py::arg("theta1"), py::arg("theta2"), py::arg("chi"),
        py::arg("g"), py::arg("params") = SolverParams{});

    m.def(
        "solve_membrane",
        [](const Grid& grid, const Coefficients& coeffs, const ScalarField& theta1,
           py::object f, py::object obstacle, const ContactParams& params) {
            return solve_membrane(grid, coeffs, theta1, to_field(grid, f),
                                  to_field(grid, obstacle), params);
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("theta1"), py::arg("f"),
        py::arg("obstacle"), py::arg("params") = ContactParams{});

    m.def("contact_set", &contact_set, py::arg("u"), py::arg("obstacle"),
          py::arg("delta_contact"));

    py::class_<StageInfo>(m, "StageInfo")
        .def_readonly("eps", &StageInfo::eps)
        .def_readonly("sweeps", &StageInfo::sweeps)
        .def_readonly("residual", &StageInfo::residual)
        .def_readonly("converged", &StageInfo::converged);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("residual", &SolveReport::residual)
        .def_readonly("eps_reached", &SolveReport::eps_reached)
        .def_readonly("total_sweeps", &SolveReport::total_sweeps)
        .def_readonly("stages", &SolveReport::stages);

    py::class_<EllipticState>(m, "EllipticState")
        .def_readonly("theta1", &EllipticState::theta1)
        .def_readonly("theta2", &EllipticState::theta2)
        .def_readonly("phi", &EllipticState::phi)
        .def_readonly("u", &EllipticState::u)
        .def_readonly("chi", &EllipticState::chi)
        .def_readonly("chi_relaxed", &EllipticState::chi_relaxed)
        .def_readonly("delta_contact", &EllipticState::delta_contact)
        .def_readonly("report", &EllipticState::report);

    m.def(
        "continuation_solve",
        [](const Grid& grid, const Coefficients& coeffs, py::object f, py::object g,
           py::object h1, py::object h2, const RegSchedule& schedule,
           const SolverParams& params, const ContactParams& contact) {
            Sources src{to_field(grid, f), to_field(grid, g), to_field(grid, h1),
                        to_field(grid, h2)};
            return continuation_solve(grid, coeffs, src, schedule, params, contact);
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("f"), py::arg("g"), py::arg("h1"),
        py::arg("h2"), py::arg("schedule") = RegSchedule{}, py::arg("params") = SolverParams{},
        py::arg("contact") = ContactParams{});

    m.def(
        "run_elliptic_checks",
        [](const EllipticState& state, const Coefficients& coeffs, py::object f, py::object g,
           py::object h1, py::object h2) {
            const Grid& grid = state.theta1.grid;
            Sources src{to_field(grid, f), to_field(grid, g), to_field(grid, h1),
                        to_field(grid, h2)};
            py::list out;
            for (const CheckResult& r : run_elliptic_checks(state, coeffs, src))
                out.append(check_dict(r));
            return out;
        },
        py::arg("state"), py::arg("coeffs"), py::arg("f"), py::arg("g"), py::arg("h1"),
        py::arg("h2"));

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init([](double T, int N) {
                 TimeGrid tg{T, N};
                 tg.validate();
                 return tg;
             }),
             py::arg("T"), py::arg("N"))
        .def_readonly("horizon", &TimeGrid::horizon)
        .def_readonly("steps", &TimeGrid::steps)
        .def_property_readonly("tau", &TimeGrid::tau);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_property_readonly("theta1_init", [](const Trajectory& t) { return t.theta1_init; })
        .def_property_readonly("theta2_init", [](const Trajectory& t) { return t.theta2_init; })
        .def("interpolant_gap", [](const Trajectory& t) { return interpolant_gap(t); });

    m.def(
        "run_quasistatic",
        [](const Grid& grid, const TimeGrid& tg, const Coefficients& coeffs, py::object f,
           py::object g, py::object h1, py::object h2, py::object theta1_init,
           py::object theta2_init, const RegSchedule& schedule, const SolverParams& params,
           const ContactParams& contact, int mq) {
            TimeSources src;
            src.f = wrap_generator(grid, f);
            src.g = wrap_generator(grid, g);
            src.h1 = wrap_generator(grid, h1);
            src.h2 = wrap_generator(grid, h2);
            src.theta1_init = to_field(grid, theta1_init);
            src.theta2_init = to_field(grid, theta2_init);
            return run_quasistatic(src, grid, tg, coeffs, schedule, params, contact, mq);
        },
        py::arg("grid"), py::arg("tgrid"), py::arg("coeffs"), py::arg("f"), py::arg("g"),
        py::arg("h1"), py::arg("h2"), py::arg("theta1_init"), py::arg("theta2_init"),
        py::arg("schedule") = RegSchedule{}, py::arg("params") = SolverParams{},
        py::arg("contact") = ContactParams{}, py::arg("mq") = 8);

    m.def(
        "run_quasistatic_checks",
        [](const Trajectory& traj, const Coefficients& coeffs, py::object f, py::object g,
           py::object h1, py::object h2, py::object theta1_init, py::object theta2_init) {
            const Grid& grid = traj.theta1_init.grid;
            TimeSources src;
            src.f = wrap_generator(grid, f);
            src.g = wrap_generator(grid, g);
            src.h1 = wrap_generator(grid, h1);
            src.h2 = wrap_generator(grid, h2);
            src.theta1_init = to_field(grid, theta1_init);
            src.theta2_init = to_field(grid, theta2_init);
            py::list out;
            for (const CheckResult& r : run_quasistatic_checks(traj, coeffs, src))
                out.append(check_dict(r));
            return out;
        },
        py::arg("traj"), py::arg("coeffs"), py::arg("f"), py::arg("g"), py::arg("h1"),
        py::arg("h2"), py::arg("theta1_init"), py::arg("theta2_init"));

    m.attr("__version__") = "0.1.0";
}
