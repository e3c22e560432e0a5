#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmfg/analysis.hpp"
#include "gmfg/assumptions.hpp"
#include "gmfg/config.hpp"
#include "gmfg/core.hpp"
#include "gmfg/equilibrium.hpp"
#include "gmfg/error.hpp"
#include "gmfg/report.hpp"
#include "gmfg/simulate.hpp"
#include "gmfg/verify.hpp"

namespace py = pybind11;
using namespace gmfg;

namespace {

py::dict cost_dict(const CostProfile& c) {
    py::dict d;
    d["J"] = c.J;
    d["variance"] = c.variance;
    d["mean"] = c.mean;
    d["noise"] = c.noise;
    d["cross"] = c.cross;
    d["quad"] = c.quad;
    return d;
}

} // namespace

PYBIND11_MODULE(_gmfg, m) {
    m.doc() = "Closed-form solver for infinite-horizon LQG graphon mean field games";

    static py::exception<Error> error_type(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = error_type;
            py::object instance = err(std::string(code_name(e.code())), e.what());
            PyErr_SetObject(err.ptr(), instance.ptr());
        }
    });

    py::class_<GameParams>(m, "GameParams")
        .def(py::init([](double b, double r, double rho, double sigma, double nu) {
                 GameParams p{b, r, rho, sigma, nu};
                 p.validate();
                 return p;
             }),
             py::arg("b"), py::arg("r"), py::arg("rho"), py::arg("sigma"), py::arg("nu"))
        .def_readonly("b", &GameParams::b)
        .def_readonly("r", &GameParams::r)
        .def_readonly("rho", &GameParams::rho)
        .def_readonly("sigma", &GameParams::sigma)
        .def_readonly("nu", &GameParams::nu)
        .def("__repr__", [](const GameParams& p) {
            return "GameParams(b=" + format_number(p.b) + ", r=" + format_number(p.r) + ", rho=" +
                   format_number(p.rho) + ", sigma=" + format_number(p.sigma) + ", nu=" + format_number(p.nu) + ")";
        });

    m.def("solve_riccati", [](const GameParams& p) { return solve_riccati(p).pi; });
    m.def("theta", &theta, py::arg("tau"), py::arg("params"));
    m.def("xi", &xi, py::arg("lam"), py::arg("params"));
    m.def("lambda_bar", &lambda_bar, py::arg("lam"), py::arg("params"));

    py::class_<Graphon>(m, "Graphon")
        .def_static("from_step_matrix",
                    [](const std::vector<std::vector<double>>& rows, std::size_t grid) {
                        return Graphon::from_step_matrix(SquareMatrix::from_rows(rows), grid);
                    },
                    py::arg("matrix"), py::arg("grid") = kDefaultGridSize)
        .def_static("from_eigenpairs",
                    [](std::vector<double> lambdas, std::vector<GridFunction> fs, bool step) {
                        return Graphon::from_eigenpairs(std::move(lambdas), std::move(fs),
                                                        step ? EigenfunctionKind::step : EigenfunctionKind::smooth);
                    },
                    py::arg("eigenvalues"), py::arg("eigenfunctions"), py::arg("step") = false)
        .def_property_readonly("rank", &Graphon::rank)
        .def_property_readonly("grid_size", &Graphon::grid_size)
        .def_property_readonly("eigenvalues", &Graphon::eigenvalues)
        .def_property_readonly("ones_projections", &Graphon::ones_projections)
        .def_property_readonly("is_step_function", &Graphon::is_step_function)
        .def("eigenfunction", [](const Graphon& g, std::size_t l) {
            const auto f = g.eigenfunction(l);
            return GridFunction(f.begin(), f.end());
        })
        .def("kernel", &Graphon::kernel)
        .def("apply", [](const Graphon& g, const GridFunction& v) { return g.apply(v); })
        .def("degree_profile", &Graphon::degree_profile)
        .def("canonicalize_signs", &Graphon::canonicalize_signs);

    py::class_<MeanField>(m, "MeanField")
        .def(py::init<const Graphon&, GridFunction>(), py::arg("graphon"), py::arg("samples"))
        .def_static("constant", &MeanField::constant, py::arg("graphon"), py::arg("value"))
        .def_static("blocks", &MeanField::blocks, py::arg("graphon"), py::arg("values"))
        .def_property_readonly("samples", &MeanField::samples)
        .def_property_readonly("projections", &MeanField::projections);

    py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
        .def_static("solve", &EquilibriumSolution::solve, py::arg("params"), py::arg("graphon"), py::arg("mean_field"))
        .def("z", &EquilibriumSolution::z, py::arg("i"), py::arg("t"))
        .def("s", &EquilibriumSolution::s, py::arg("i"), py::arg("t"))
        .def("q", &EquilibriumSolution::q, py::arg("i"), py::arg("t"))
        .def("mean_state", &EquilibriumSolution::mean_state, py::arg("i"), py::arg("t"))
        .def("z_profile", &EquilibriumSolution::z_profile)
        .def("s_profile", &EquilibriumSolution::s_profile)
        .def("q_profile", &EquilibriumSolution::q_profile)
        .def("mean_state_profile", &EquilibriumSolution::mean_state_profile)
        .def_property_readonly("params", &EquilibriumSolution::params)
        .def_property_readonly("pi", &EquilibriumSolution::pi)
        .def_property_readonly("q_infinity", &EquilibriumSolution::q_infinity)
        .def_property_readonly("grid_size", &EquilibriumSolution::grid_size)
        .def_property_readonly("slowest_rate", &EquilibriumSolution::slowest_rate)
        .def_property_readonly("modes", [](const EquilibriumSolution& sol) {
            py::list out;
            for (const auto& md : sol.modes()) {
                py::dict d;
                d["lambda"] = md.lambda;
                d["projection"] = md.projection;
                d["z0"] = md.z0;
                d["xi"] = md.xi;
                d["theta"] = md.theta;
                d["lambda_bar"] = md.lambda_bar;
                out.append(d);
            }
            return out;
        });

    m.def("cost_full", [](const EquilibriumSolution& s) { return cost_dict(cost_full(s)); });
    m.def("cost_simplified", [](const EquilibriumSolution& s) { return cost_dict(cost_simplified(s)); });
    m.def("cost_from_offsets", [](const EquilibriumSolution& s) { return cost_dict(cost_from_offsets(s)); });
    m.def("cost_constant_mean", [](const EquilibriumSolution& s) {
        const auto cm = cost_constant_mean(s);
        py::dict d = cost_dict(cm.cost);
        d["degree_bar"] = cm.degree_bar;
        d["degree_tilde"] = cm.degree_tilde;
        return d;
    });
    m.def("consistency_residual", &consistency_residual, py::arg("solution"), py::arg("t"));
    m.def("q_by_quadrature", &q_by_quadrature, py::arg("solution"), py::arg("i"), py::arg("t"));
    m.def("find_strict_local_extrema",
          [](const std::vector<double>& v, bool maxima, double tol) {
              return find_strict_local_extrema(v, maxima ? ExtremumKind::max : ExtremumKind::min, tol);
          },
          py::arg("profile"), py::arg("maxima") = true, py::arg("tol_strict") = kTolStrict);

    // Reports cross the boundary as JSON text; the Python package decodes them.
    m.def("_check_assumptions_json", [](const Graphon& g, const MeanField& mf, const GameParams& p) {
        return to_json(check_assumptions(g, mf, p)).dump();
    });
    m.def("_verify_json", [](const EquilibriumSolution& s, double fault) {
        VerifyOptions opt;
        opt.lambda_bar_fault = fault;
        return to_json(verify(s, opt)).dump();
    });
    m.def("_critical_nodes_json", [](const EquilibriumSolution& s, bool ablation) {
        return to_json(equivalence_report(s, {ablation}), s.grid_size()).dump();
    });
    m.def("_simulate_json", [](const EquilibriumSolution& s, std::size_t nodes, std::size_t cluster_size,
                               double initial_std, std::uint64_t seed, double dt, double t_final, unsigned threads) {
        py::gil_scoped_release release;
        const auto spec = build_population(s.graphon(), nodes, cluster_size, s.mean_field(), initial_std, seed);
        const auto res = run(spec, s, {dt, t_final, 100, threads});
        return to_json(compare(res, spec, s), res).dump();
    });
    m.def("_load_config", [](const std::string& path) {
        const auto c = load_config(path);
        auto g = build_graphon(c);
        auto mf = build_mean_field(c, g);
        return py::make_tuple(c.game, std::move(g), std::move(mf));
    });
}
