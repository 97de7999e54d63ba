#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "priccati/cli.hpp"
#include "priccati/error.hpp"
#include "priccati/expr.hpp"
#include "priccati/global_solver.hpp"
#include "priccati/irreducibility.hpp"
#include "priccati/ore.hpp"

namespace py = pybind11;
using namespace priccati;

namespace {

// Python-side handle; the library shares curves as pointers to const.
struct PyCurve {
    CurvePtr ptr;
};

PyCurve make_curve(const std::string& nstar, std::uint64_t p, unsigned ext_degree, std::optional<std::string> ext_modulus,
                    std::uint64_t seed)
{
    cli::InstanceSpec spec;
    spec.p = p;
    spec.ext_degree = ext_degree;
    spec.ext_modulus = std::move(ext_modulus);
    spec.nstar = nstar;
    spec.seed = seed;
    return PyCurve{cli::build_instance(spec).curve};
}

py::dict report_dict(const IrreducibilityReport& report)
{
    py::list places;
    for (const auto& pl : report.places) {
        py::dict d;
        d["center"] = pl.center;
        d["e"] = pl.ram_index;
        d["f"] = pl.relative_degree;
        d["eta"] = pl.eta;
        d["tested"] = pl.tested;
        d["solvable"] = pl.solvable;
        d["note"] = pl.note;
        places.append(d);
    }
    py::dict out;
    out["verdict"] = to_string(report.verdict);
    out["places"] = places;
    return out;
}

std::vector<std::string> operator_strings(const OrePoly<RatFunc>& l)
{
    std::vector<std::string> out;
    for (const auto& c : l.coeffs()) {
        out.push_back(c.to_string());
    }
    return out;
}

OrePoly<RatFunc> operator_from_strings(const std::vector<std::string>& coeffs, const CurvePtr& curve)
{
    std::vector<RatFunc> c;
    for (const auto& s : coeffs) {
        c.push_back(parse_ratfunc(s, curve->base()));
    }
    return OrePoly<RatFunc>(RatFunc(curve->base()), std::move(c));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "p-Riccati solver and central differential operator factorization over F_q(x)";

    static py::exception<Error> base_error(m, "PriccatiError", PyExc_RuntimeError);
    static py::exception<InputError> input_error(m, "InputError", base_error.ptr());
    static py::exception<UnsupportedError> unsupported_error(m, "UnsupportedError", base_error.ptr());
    static py::exception<PrecisionError> precision_error(m, "PrecisionError", base_error.ptr());
    static py::exception<IncompleteSearchError> incomplete_error(m, "IncompleteSearchError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const InputError& e) {
            py::set_error(input_error, e.what());
        } catch (const UnsupportedError& e) {
            py::set_error(unsupported_error, e.what());
        } catch (const PrecisionError& e) {
            py::set_error(precision_error, e.what());
        } catch (const IncompleteSearchError& e) {
            py::set_error(incomplete_error, e.what());
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    py::class_<PyCurve>(m, "Curve")
        .def(py::init(&make_curve), py::arg("nstar"), py::arg("p"), py::arg("ext_degree") = 1,
             py::arg("ext_modulus") = std::nullopt, py::arg("seed") = 0)
        .def_property_readonly("p", [](const PyCurve& c) { return c.ptr->p(); })
        .def_property_readonly("q", [](const PyCurve& c) { return c.ptr->base()->order(); })
        .def_property_readonly("dx", [](const PyCurve& c) { return c.ptr->dx(); })
        .def_property_readonly("dy", [](const PyCurve& c) { return c.ptr->dy(); })
        .def_property_readonly("nstar", [](const PyCurve& c) { return c.ptr->nstar().to_string(); })
        .def_property_readonly("disc", [](const PyCurve& c) { return c.ptr->disc().to_string(); })
        .def("element", [](const PyCurve& c, const std::string& text) { return parse_ffelem(text, c.ptr); }, py::arg("text"))
        .def("a", [](const PyCurve& c) { return c.ptr->a(); })
        .def("x", [](const PyCurve& c) { return c.ptr->x(); })
        .def("one", [](const PyCurve& c) { return c.ptr->one(); })
        .def("zero", [](const PyCurve& c) { return c.ptr->zero(); })
        .def("y_n", [](const PyCurve& c) { return c.ptr->y_n(); })
        .def("__repr__", [](const PyCurve& c) {
            return "Curve('" + c.ptr->nstar().to_string() + "', q=" + std::to_string(c.ptr->base()->order()) + ")";
        });

    py::class_<FFElem>(m, "Element")
        .def("coordinates", [](const FFElem& f) {
            std::vector<std::string> out;
            for (const auto& c : f.coords()) {
                out.push_back(c.to_string());
            }
            return out;
        })
        .def_property_readonly("curve", [](const FFElem& f) { return PyCurve{f.curve()}; })
        .def("is_zero", &FFElem::is_zero)
        .def("coefficient_degree", &FFElem::coefficient_degree)
        .def("inverse", &FFElem::inverse)
        .def("__pow__", [](const FFElem& f, std::uint64_t e) { return f.pow(e); })
        .def("__add__", [](const FFElem& a, const FFElem& b) { return a + b; })
        .def("__sub__", [](const FFElem& a, const FFElem& b) { return a - b; })
        .def("__mul__", [](const FFElem& a, const FFElem& b) { return a * b; })
        .def("__truediv__", [](const FFElem& a, const FFElem& b) { return a / b; })
        .def("__neg__", [](const FFElem& a) { return -a; })
        .def("__eq__", [](const FFElem& a, const FFElem& b) { return a.curve() == b.curve() && a == b; })
        .def("__str__", &FFElem::to_string)
        .def("__repr__", [](const FFElem& f) { return "Element('" + f.to_string() + "')"; });

    m.def("derive", &derive, py::arg("f"), "d/dx on K_N");
    m.def("frobenius", &frobenius, py::arg("f"), "f^p");
    m.def("riccati_map", &riccati_map, py::arg("f"), "f^(p-1) + f^p");
    m.def("is_solution", &is_solution, py::arg("f"), "riccati_map(f) == y_N");
    m.def("log_derivative", &log_derivative, py::arg("g"), "g'/g");
    m.def("is_reducible", [](const PyCurve& c) { return report_dict(is_reducible(c.ptr)); }, py::arg("curve"),
          "Irreducibility verdict with the per-place table");
    m.def(
        "solve",
        [](const PyCurve& c, int max_level) -> std::optional<FFElem> {
            SolveOptions o;
            o.max_level = max_level;
            py::gil_scoped_release release;
            return solve_priccati_detailed(c.ptr, o).solution;
        },
        py::arg("curve"), py::arg("max_level") = -1, "A solution of the p-Riccati equation, or None when irreducible");
    m.def(
        "reconstruct_factor",
        [](const PyCurve& c, const FFElem& f) { return operator_strings(reconstruct_factor(c.ptr, f)); }, py::arg("curve"),
        py::arg("f"), "Coefficients c_0, ..., c_{d_y} of the monic right factor built from a solution");
    m.def(
        "right_divides",
        [](const PyCurve& c, const std::vector<std::string>& coeffs) {
            const auto l = operator_from_strings(coeffs, c.ptr);
            return !l.is_zero() && right_divmod(nstar_p_operator(c.ptr), l).second.is_zero();
        },
        py::arg("curve"), py::arg("coefficients"), "Whether the operator right-divides N_*^p(D)");
    m.def(
        "vdp_extract",
        [](const PyCurve& c, const std::vector<std::string>& coeffs) {
            return vdp_extract(lift_to_curve(operator_from_strings(coeffs, c.ptr), c.ptr), c.ptr);
        },
        py::arg("curve"), py::arg("coefficients"), "Solution recovered from a right factor");
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& input) {
            std::ostringstream out;
            std::ostringstream err;
            std::istringstream in(input);
            const int code = cli::run(args, out, err, in);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "", "Run the command line in-process; returns (exit code, stdout, stderr)");
}
