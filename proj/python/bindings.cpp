#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uhs/commands.hpp"
#include "uhs/lemma_lab.hpp"
#include "uhs/solver.hpp"
#include "uhs/stationary_phase.hpp"

namespace py = pybind11;
using namespace uhs;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_python(const py::object& obj) {
    return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

using Term = std::tuple<double, std::vector<int>, std::vector<int>>;

AngularPolynomial polynomial(const std::vector<Term>& terms) {
    AngularPolynomial P;
    for (const auto& [c, z, s] : terms) P.terms.push_back({c, z, s});
    return P;
}

ProfileFunction profile(const std::string& name, double a, double epsilon) {
    return profiles::by_name(name, a, epsilon);
}

}  // namespace

PYBIND11_MODULE(_uhs, m) {
    m.doc() = "Scattering data and plane-wave solutions of the ultrahyperbolic equation";

    auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<RejectedInput>(m, "RejectedInput", base.ptr());
    py::register_exception<ToleranceError>(m, "ToleranceError", base.ptr());

    py::class_<SphereRule>(m, "SphereRule")
        .def_readonly("dim", &SphereRule::dim)
        .def_readonly("weights", &SphereRule::weights)
        .def_readonly("antipode", &SphereRule::antipode)
        .def("__len__", &SphereRule::size)
        .def("node", [](const SphereRule& s, std::size_t i) {
            if (i >= s.size()) throw py::index_error();
            const auto v = s.node(i);
            return RealVector(v.begin(), v.end());
        });
    m.def("sphere_rule", &sphere_rule, py::arg("d"), py::arg("resolution"));
    m.def("sphere_measure", &sphere_measure, py::arg("d"));

    py::class_<RadialRule>(m, "RadialRule")
        .def_readonly("nodes", &RadialRule::nodes)
        .def_readonly("weights", &RadialRule::weights)
        .def_readonly("r_max", &RadialRule::r_max)
        .def_readonly("s_scale", &RadialRule::s_scale)
        .def("__len__", &RadialRule::size);
    m.def("radial_rule", &radial_rule, py::arg("N"), py::arg("epsilon"), py::arg("tol"), py::arg("s_scale"));

    py::class_<Amplitude>(m, "Amplitude")
        .def_readonly("d", &Amplitude::d)
        .def_readonly("n", &Amplitude::n)
        .def_readonly("epsilon", &Amplitude::epsilon)
        .def_readonly("description", &Amplitude::description)
        .def("__call__", [](const Amplitude& A, const RealVector& zeta, const RealVector& sigma,
                            double r) { return A(zeta, sigma, r); });
    m.def(
        "gamma_exp",
        [](int d, int n, double epsilon, const std::vector<Term>& terms) {
            return gamma_exp(d, n, epsilon, polynomial(terms));
        },
        py::arg("d"), py::arg("n"), py::arg("epsilon") = 0.5, py::arg("terms") = std::vector<Term>{},
        "r^{N/2-2+eps} e^{-r} times a polynomial given as (coefficient, zeta powers, sigma powers) terms");
    m.def(
        "gamma_without_tail",
        [](int d, int n, double epsilon) { return gamma_without_tail(d, n, epsilon); }, py::arg("d"),
        py::arg("n"), py::arg("epsilon") = 0.5);
    m.def("angular_bump", &angular_bump, py::arg("d"), py::arg("n"), py::arg("epsilon"), py::arg("theta0"),
          py::arg("omega0"), py::arg("width") = 0.5, py::arg("power") = 6);
    m.def("tabulated_radial", &tabulated_radial, py::arg("d"), py::arg("n"), py::arg("epsilon"), py::arg("r"),
          py::arg("values"));

    py::class_<ScatteringData>(m, "ScatteringData")
        .def_readonly("d", &ScatteringData::d)
        .def_readonly("n", &ScatteringData::n)
        .def_readonly("epsilon", &ScatteringData::epsilon)
        .def("__call__", [](const ScatteringData& f, const RealVector& theta, const RealVector& omega, double p) {
            py::gil_scoped_release release;
            return f(theta, omega, p);
        });
    m.def("closed_form_scattering", &closed_form_scattering, py::arg("amplitude"),
          py::arg("negative_branch_sign") = 1.0);
    m.def(
        "scattering_from_amplitude",
        [](const Amplitude& A, double tol) {
            NumericalScatteringOptions o;
            o.tol = tol;
            return scattering_from_amplitude(A, o);
        },
        py::arg("amplitude"), py::arg("tol") = 1e-12);
    m.def(
        "scattering_to_amplitude",
        [](const ScatteringData& f, const RealVector& zeta, const RealVector& sigma, double r) {
            return scattering_to_amplitude(f, zeta, sigma, r);
        },
        py::arg("f"), py::arg("zeta"), py::arg("sigma"), py::arg("r"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "check_compatibility",
        [](const ScatteringData& f, const RealVector& r_grid, int resolution) {
            CompatibilityReport rep;
            {
                py::gil_scoped_release release;
                const auto pairs = all_node_pairs(sphere_rule(f.d, resolution), sphere_rule(f.n, resolution));
                rep = check_compatibility(f, r_grid, pairs);
            }
            return to_python(to_json(rep));
        },
        py::arg("f"), py::arg("r_grid"), py::arg("resolution") = 4);

    py::class_<SolutionField>(m, "SolutionField")
        .def_readonly("radius", &SolutionField::radius)
        .def("__call__", [](const SolutionField& u, const RealVector& x, const RealVector& y) {
            py::gil_scoped_release release;
            return evaluate(u, x, y);
        });
    m.def(
        "make_solution_field",
        [](const Amplitude& A, double radius, int sphere_resolution, double radial_tol) {
            SolverOptions o;
            o.sphere_resolution = sphere_resolution;
            o.radial_tol = radial_tol;
            return make_solution_field(A, radius, o);
        },
        py::arg("amplitude"), py::arg("radius"), py::arg("sphere_resolution") = 0, py::arg("radial_tol") = 1e-12,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "pde_residual",
        [](const SolutionField& u, const RealVector& x, const RealVector& y, double h) {
            return pde_residual(u, x, y, h);
        },
        py::arg("u"), py::arg("x"), py::arg("y"), py::arg("h"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "remainder_scan",
        [](const Amplitude& A, const RealVector& theta, const RealVector& omega, double p, double r,
           const RealVector& s_values) {
            PhaseComparison cmp;
            {
                py::gil_scoped_release release;
                cmp = remainder_scan(A, theta, omega, p, r, s_values);
            }
            return to_python(to_json(cmp));
        },
        py::arg("amplitude"), py::arg("theta"), py::arg("omega"), py::arg("p"), py::arg("r"), py::arg("s_values"));

    m.def(
        "inverse_fourier_profile",
        [](const std::string& name, double a, double epsilon, double r) {
            return inverse_fourier_profile(profile(name, a, epsilon), r);
        },
        py::arg("profile"), py::arg("a"), py::arg("epsilon"), py::arg("r"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "hilbert_power",
        [](const std::string& name, double a, double epsilon, int power, double p) {
            return hilbert_power(profile(name, a, epsilon), power, p);
        },
        py::arg("profile"), py::arg("a"), py::arg("epsilon"), py::arg("m"), py::arg("p"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "hilbert_pv_oracle",
        [](const std::string& name, double a, double epsilon, double p, double cutoff) {
            return hilbert_pv_oracle(profile(name, a, epsilon), p, cutoff).value;
        },
        py::arg("profile"), py::arg("a"), py::arg("epsilon"), py::arg("p"), py::arg("cutoff") = 1e6,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "check_holder",
        [](const std::string& name, double a, double epsilon) {
            EnvelopeFit fit;
            {
                py::gil_scoped_release release;
                fit = check_holder(profile(name, a, epsilon), default_holder_pairs());
            }
            return to_python(to_json(fit));
        },
        "Holder quotients of the transform over the default pairs");
    m.def(
        "check_small_r_blowup",
        [](const std::string& name, double a, double epsilon, int k, const RealVector& grid) {
            EnvelopeFit fit;
            {
                py::gil_scoped_release release;
                fit = check_small_r_blowup(profile(name, a, epsilon), k, grid);
            }
            return to_python(to_json(fit));
        },
        "growth of the (k-1)-th transform derivative as r -> 0");
    m.def(
        "check_tail_decay",
        [](const std::string& name, double a, double epsilon, int k, int ell, const RealVector& grid) {
            EnvelopeFit fit;
            {
                py::gil_scoped_release release;
                fit = check_tail_decay(profile(name, a, epsilon), k, ell, grid);
            }
            return to_python(to_json(fit));
        },
        "r^ell |d^k V| on a grid inside [1, 100]");

    m.def("command_names", &command_names);
    m.def(
        "run_command",
        [](const std::string& name, const py::object& config) {
            const RunConfig cfg = parse_config(config.is_none() ? Json::object() : from_python(config));
            Json report;
            {
                py::gil_scoped_release release;
                report = run_command(name, cfg).report(cfg);
            }
            return to_python(report);
        },
        py::arg("name"), py::arg("config") = py::none(),
        "Runs a driver command on a configuration dict and returns its report");
}
