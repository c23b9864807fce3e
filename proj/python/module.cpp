#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"
#include "blowup/lemmas.hpp"
#include "blowup/ode.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/similarity.hpp"
#include "blowup/solver.hpp"
#include "blowup/theorem.hpp"

namespace py = pybind11;
using namespace blowup;

namespace {

struct RunResult {
    BlowupRun run;
    std::shared_ptr<const RuleSet> rules;

    std::vector<SimilaritySnapshot> snapshots(double s0, double s1, double ds) const {
        return trajectory_to_w(run.trajectory, Vec3::Zero(), run.T_est, uniform_s_grid(s0, s1, ds), rules);
    }
};

RunResult simulate(double p, int N, int nr, double r_max, const std::string& family, double bump_amplitude,
                   double eta, double store_ds) {
    SolverConfig c;
    c.e = make_exponents(p, N);
    c.grid = make_radial_grid(r_max, nr);
    c.eta = eta;
    c.store_ds = store_ds;
    c.init.family = parse_initial_family(family);
    c.init.bump_amplitude = bump_amplitude;
    RunResult r{run_until_blowup(c), nullptr};
    // the blow-up point is the origin, so the radial rule is exact
    r.rules = make_rule_set(N, standard_betas({0.6, 1.0}), 32, 1, AngularMode::Radial);
    return r;
}

py::dict series_dict(const FunctionalSeries& f) {
    py::dict d;
    d["s"] = f.s;
    d["value"] = f.value;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "radial blow-up solver, similarity variables and Lyapunov functionals";

    // later registrations are tried first
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);

    py::class_<Exponents>(m, "Exponents")
        .def_readonly("p", &Exponents::p)
        .def_readonly("N", &Exponents::N)
        .def_readonly("p_c", &Exponents::p_c)
        .def_readonly("p_S", &Exponents::p_S)
        .def_readonly("alpha", &Exponents::alpha)
        .def("__repr__", [](const Exponents& e) {
            return "Exponents(p=" + std::to_string(e.p) + ", N=" + std::to_string(e.N) + ")";
        });
    m.def("make_exponents", &make_exponents, py::arg("p"), py::arg("N"));
    m.def("kappa", [](double p, int N) { return kappa(make_exponents(p, N)); }, py::arg("p"), py::arg("N"));
    m.def("constant_state_residual",
          [](double p, int N, double w) { return constant_state_residual(make_exponents(p, N), w); }, py::arg("p"),
          py::arg("N"), py::arg("w"));
    m.def("unit_ball_volume", &unit_ball_volume, py::arg("N"));
    m.def("gauss_jacobi", &gauss_jacobi, py::arg("n"), py::arg("a"), py::arg("b"),
          "nodes and weights on [-1, 1] for the weight (1-x)^a (1+x)^b");

    m.def(
        "ode_blowup",
        [](double p, double u0, double u1, double dt, double u_cap) {
            const auto e = make_exponents(p, 3);
            const auto traj = ode_integrate(u0, u1, e, dt, u_cap);
            py::dict d;
            d["blew_up"] = traj.blew_up;
            d["T"] = traj.T;
            if (traj.blew_up) {
                const auto fit = fit_blowup(traj, e);
                d["T_fit"] = fit.T_est;
                d["exponent"] = fit.exponent;
            }
            return d;
        },
        py::arg("p"), py::arg("u0"), py::arg("u1"), py::arg("dt") = 1e-3, py::arg("u_cap") = 1e8,
        "integrate u'' = |u|^(p-1) u and fit the blow-up time and rate");

    py::class_<RunResult>(m, "Run")
        .def_property_readonly("blew_up", [](const RunResult& r) { return r.run.blew_up; })
        .def_property_readonly("T_est", [](const RunResult& r) { return r.run.T_est; })
        .def_property_readonly("exponent", [](const RunResult& r) { return r.run.exponent; })
        .def_property_readonly("steps", [](const RunResult& r) { return r.run.steps; })
        .def_property_readonly("center_t", [](const RunResult& r) { return r.run.trajectory.center_t; })
        .def_property_readonly("center_u", [](const RunResult& r) { return r.run.trajectory.center_u; })
        .def(
            "F0",
            [](const RunResult& r, double s0, double s1, double ds) { return series_dict(F0_series(r.snapshots(s0, s1, ds))); },
            py::arg("s0") = 0.5, py::arg("s1") = 16.5, py::arg("ds") = 0.025)
        .def(
            "lemma",
            [](const RunResult& r, const std::string& name, double s0, double s1, double ds, double eps) {
                const auto rep = check_derivative_lemma(parse_lemma(name), r.snapshots(s0, s1, ds), eps, s0, s1, 1e9);
                py::dict d;
                d["change"] = rep.lhs;
                d["integrated_rate"] = rep.rhs;
                d["abs_residual"] = rep.abs_residual;
                d["rel_residual"] = rep.rel_residual;
                return d;
            },
            py::arg("name"), py::arg("s0"), py::arg("s1"), py::arg("ds") = 0.025, py::arg("eps") = 1.0)
        .def(
            "rate",
            [](const RunResult& r, double q, double s0, double s1, double ds) {
                const auto g = uniform_s_grid(s0, s1, ds);
                const auto rep = theorem_quantities(r.run.trajectory, Vec3::Zero(), r.run.T_est, q, g, r.rules);
                py::dict d;
                d["expected_l2_exponent"] = rep.expected_l2_exponent;
                d["fitted_l2_exponent"] = rep.fitted_l2_exponent;
                d["cone_bounded"] = rep.cone_bounded;
                return d;
            },
            py::arg("q") = 1.0, py::arg("s0") = 1.0, py::arg("s1") = 15.5, py::arg("ds") = 0.25);

    m.def("simulate", &simulate, py::arg("p") = 4.0, py::arg("N") = 3, py::arg("nr") = 2048, py::arg("r_max") = 2.5,
          py::arg("family") = "ode_plateau", py::arg("bump_amplitude") = 0.0, py::arg("eta") = 0.02,
          py::arg("store_ds") = 1.0 / 64.0, py::call_guard<py::gil_scoped_release>(),
          "solve the radial wave equation until blow-up (initial data centred at the origin)");

    m.attr("__version__") = BLOWUP_VERSION;
}
