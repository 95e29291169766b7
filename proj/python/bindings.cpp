#include "biphoton/biphoton.hpp"
#include "biphoton/cli.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/correlations.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/spectra.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

namespace py = pybind11;
using namespace biphoton;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict trace_dict(const Trace& t) {
    py::dict d;
    d["axis"] = to_array(t.axis);
    d["values"] = to_array(t.values);
    d["kind"] = std::string(kind_name(t.meta.kind));
    d["normalization"] = std::string(normalization_name(t.meta.normalization));
    d["tier"] = t.meta.tier;
    d["scenario_hash"] = t.meta.scenario_hash;
    return d;
}

py::dict scales_dict(const DerivedScales& s) {
    py::dict d;
    d["tau0"] = s.tau0;
    d["round_trip_T"] = s.round_trip_T;
    d["fsr_delta_omega"] = s.fsr_delta_omega;
    d["gamma"] = s.gamma;
    d["kappa"] = s.kappa;
    d["mode_number_m0"] = s.mode_number_m0;
    d["regime_ok"] = s.regime.ok;
    d["regime_ratios"] = s.regime.ratios;
    d["regime_summary"] = s.regime.summary();
    return d;
}

// Scales built from bare numbers, for the stand-alone kernels.
DerivedScales bare_scales(double tau0, double fsr, double gamma) {
    DerivedScales s;
    s.tau0 = tau0;
    s.fsr_delta_omega = fsr;
    s.round_trip_T = constants::two_pi / fsr;
    s.gamma = gamma;
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Biphoton generation in a single-resonant OPO far below threshold";

    static py::exception<Error> error_type(m, "BiphotonError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto type = py::reinterpret_borrow<py::object>(error_type.ptr());
            py::object exc = type(std::string(kind_name(e.kind())) + ": " + e.what());
            exc.attr("kind") = std::string(kind_name(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<Scenario>(m, "Scenario")
        .def_static(
            "from_json",
            [](const std::string& text) { return assemble_scenario(parse_scenario_config(text)); },
            py::arg("text"))
        .def_static(
            "load", [](const std::string& path) { return load_scenario(path); }, py::arg("path"))
        .def_property_readonly("hash", [](const Scenario& s) { return s.hash; })
        .def_property_readonly("frequencies",
                               [](const Scenario& s) {
                                   return py::make_tuple(s.freqs.pump(), s.freqs.signal(),
                                                         s.freqs.idler());
                               })
        .def("scales", [](const Scenario& s) { return scales_dict(s.scales); })
        .def("rate_mode_sum",
             [](const Scenario& s, long long initial_modes) {
                 return rate_mode_sum(s.config.crystal, s.config.pump, s.freqs, s.scales,
                                      initial_modes);
             },
             py::arg("initial_modes") = 0)
        .def("rate_continuum",
             [](const Scenario& s) {
                 return rate_continuum(s.config.crystal, s.config.pump, s.freqs, s.scales);
             })
        .def("spectrum",
             [](const Scenario& s, const std::string& field, double start, double stop,
                std::size_t count, long long max_mode) {
                 auto t = spectrum(parse_field(field), s.scales, s.freqs, {start, stop, count},
                                   max_mode, s.config.output.normalization);
                 t.meta.scenario_hash = s.hash;
                 return trace_dict(t);
             },
             py::arg("field"), py::arg("start"), py::arg("stop"), py::arg("count"),
             py::arg("max_mode") = auto_modes)
        .def("g1",
             [](const Scenario& s, const std::string& field, double start, double stop,
                std::size_t count, long long max_mode, bool include_carrier) {
                 const auto t = g1(parse_field(field), s.scales, s.freqs, {start, stop, count},
                                   max_mode, include_carrier);
                 return py::make_tuple(to_array(t.axis),
                                       py::array_t<std::complex<double>>(
                                           static_cast<py::ssize_t>(t.values.size()),
                                           t.values.data()));
             },
             py::arg("field"), py::arg("start"), py::arg("stop"), py::arg("count"),
             py::arg("max_mode") = auto_modes, py::arg("include_carrier") = false)
        .def("g2",
             [](const Scenario& s, const std::string& tier, py::object start, py::object stop,
                py::object count, double resolution_dT, long long max_mode, int quad_points,
                bool mask_forbidden_region) {
                 G2Request req;
                 req.tier = parse_tier(tier);
                 req.resolution_dT = resolution_dT;
                 req.max_mode = max_mode;
                 req.quad_points = quad_points;
                 req.mask_forbidden_region = mask_forbidden_region;
                 if (start.is_none() || stop.is_none() || count.is_none()) {
                     req.tau_grid = g2_tau_grid(s, req.tier, resolution_dT);
                 } else {
                     req.tau_grid = {start.cast<double>(), stop.cast<double>(),
                                     count.cast<std::size_t>()};
                 }
                 auto t = g2(req, s.scales);
                 t.meta.scenario_hash = s.hash;
                 return trace_dict(t);
             },
             py::arg("tier") = "series", py::arg("start") = py::none(),
             py::arg("stop") = py::none(), py::arg("count") = py::none(),
             py::arg("resolution_dT") = 0.0, py::arg("max_mode") = -1,
             py::arg("quad_points") = 0, py::arg("mask_forbidden_region") = true)
        .def("wavefunction",
             [](const Scenario& s, long long max_mode, double halfwidth_gammas, int points) {
                 const auto g = wavefunction_grid(s.scales, max_mode, halfwidth_gammas, points);
                 py::array_t<std::complex<double>> psi(
                     {static_cast<py::ssize_t>(g.mode_count()),
                      static_cast<py::ssize_t>(g.detuning.size())});
                 std::copy(g.amplitudes.begin(), g.amplitudes.end(), psi.mutable_data());
                 return py::make_tuple(to_array(g.detuning), psi);
             },
             py::arg("max_mode"), py::arg("halfwidth_gammas") = 10.0, py::arg("points") = 321);

    m.def(
        "phi_exact",
        [](long long mode, double detuning, double tau0, double fsr, int quad_points) {
            return phi_exact(mode, detuning, bare_scales(tau0, fsr, 1.0), quad_points);
        },
        py::arg("m"), py::arg("detuning"), py::arg("tau0"), py::arg("fsr"),
        py::arg("quad_points") = 256);
    m.def(
        "phi_analytic",
        [](long long mode, double detuning, double tau0, double fsr) {
            return phi_analytic(mode, detuning, bare_scales(tau0, fsr, 1.0));
        },
        py::arg("m"), py::arg("detuning"), py::arg("tau0"), py::arg("fsr"));
    m.def("lorentzian_kernel", py::vectorize(lorentzian_kernel), py::arg("t"), py::arg("gamma"));
    m.def(
        "sinc2_mode_sum",
        [](double step, long long initial_modes) {
            const auto r = sinc2_mode_sum(step, initial_modes);
            return py::make_tuple(r.value, r.modes, r.error_bound);
        },
        py::arg("step"), py::arg("initial_modes") = 0);
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
