#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairsim/experiments.hpp"
#include "pairsim/fock.hpp"
#include "pairsim/report.hpp"
#include "pairsim/scenario.hpp"

namespace py = pybind11;
using namespace pairsim;

PYBIND11_MODULE(_pairsim, m) {
    m.doc() = "Exact coincidence, CHSH and visibility predictions for photon-pair sources.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ZeroState>(m, "ZeroState", PyExc_ArithmeticError);
    py::register_exception<DarkDenominator>(m, "DarkDenominator", PyExc_ArithmeticError);
    py::register_exception<AllDark>(m, "AllDark", PyExc_ArithmeticError);

    py::enum_<StateKind>(m, "StateKind")
        .value("circular_pair", StateKind::circular_pair)
        .value("psi_e", StateKind::psi_e)
        .value("psi_u", StateKind::psi_u)
        .value("psi_u_prime", StateKind::psi_u_prime);

    py::class_<FockKet>(m, "FockKet")
        .def("__len__", &FockKet::size)
        .def("norm2", [](const FockKet& k) { return norm2(k); })
        .def("amplitudes",
             [](const FockKet& k) {
                 std::vector<std::pair<std::string, complex>> out;
                 for (const auto& [occ, a] : k.amplitudes()) out.emplace_back(to_string(occ), a);
                 return out;
             })
        .def("__repr__", [](const FockKet& k) { return to_string(k); });

    m.def("vacuum", &vacuum);
    m.def("named_state", [](StateKind kind) { return named_state(kind); }, py::arg("kind"));
    m.def("inner", &inner, py::arg("a"), py::arg("b"));
    m.def("norm2", &norm2, py::arg("ket"));
    m.def("add", &add, py::arg("a"), py::arg("b"), py::arg("alpha") = complex{1.0}, py::arg("beta") = complex{1.0});

    py::class_<ScenarioResult>(m, "ScenarioResult")
        .def_readonly("observable", &ScenarioResult::observable)
        .def_readonly("parameters", &ScenarioResult::parameters)
        .def_readonly("value", &ScenarioResult::value)
        .def_readonly("closed_form", &ScenarioResult::closed_form)
        .def_readonly("label", &ScenarioResult::label)
        .def_readonly("units", &ScenarioResult::units)
        .def_property_readonly("abs_error", &ScenarioResult::abs_error)
        .def("__repr__", [](const ScenarioResult& r) {
            return "<ScenarioResult " + r.observable + " " + param_label(r) + " value=" + std::to_string(r.value) + ">";
        });

    m.def("fig1_coincidence", &fig1_coincidence, py::arg("theta1"), py::arg("theta2"));
    m.def("fig1_conditional_check", &fig1_conditional_check, py::arg("theta1"), py::arg("normalized") = false);
    m.def("pdc_coincidence", &pdc_coincidence, py::arg("kind"), py::arg("theta1"), py::arg("theta2"));
    m.def("fig2_split_coincidence", &fig2_split_coincidence, py::arg("kind"), py::arg("theta3"), py::arg("theta4"));
    m.def("fig3_visibility", [](StateKind kind) { return fig3_visibility(kind); }, py::arg("kind"));
    m.def(
        "cascade_coincidence",
        [](double theta1, double theta2, complex g11, complex g12, complex g21, complex g22) {
            return cascade_coincidence(CascadeGeometry{g11, g12, g21, g22}, theta1, theta2);
        },
        py::arg("theta1"), py::arg("theta2"), py::arg("g11") = complex{1.0}, py::arg("g12") = complex{1.0},
        py::arg("g21") = complex{1.0}, py::arg("g22") = complex{1.0});
    m.def("same_channel_probability", &same_channel_probability, py::arg("kind"), py::arg("channel"));
    m.def("split_probability", &split_probability, py::arg("kind"));
    m.def("correlation_E", py::overload_cast<StateKind, double, double>(&correlation_E), py::arg("kind"),
          py::arg("theta1"), py::arg("theta2"));
    m.def("chsh_S", py::overload_cast<StateKind, double, double, double, double>(&chsh_S), py::arg("kind"),
          py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));
    m.def("canonical_chsh_angles", [] {
        const auto c = canonical_chsh_angles();
        return py::make_tuple(c.a, c.a_prime, c.b, c.b_prime);
    });

    m.def(
        "run_scenario", [](const std::string& text) { return run_scenario(parse_scenario(text)); }, py::arg("text"),
        "Parse a scenario and return its result rows.");
    m.def(
        "render_scenario",
        [](const std::string& text) {
            const ScenarioSpec spec = parse_scenario(text);
            return render(run_scenario(spec), spec.format);
        },
        py::arg("text"), "Parse and run a scenario; return the CSV or JSON table.");
    m.def(
        "normalize_scenario", [](const std::string& text) { return format_scenario(parse_scenario(text)); },
        py::arg("text"), "Canonical text form of a scenario.");
    m.def("selfcheck_table", &selfcheck_table);
    m.def(
        "check_rows",
        [](const std::vector<ScenarioResult>& rows, double tolerance) { return check_rows(rows, tolerance); },
        py::arg("rows"), py::arg("tolerance") = kDefaultTolerance);
}
