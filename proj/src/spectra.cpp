#include "biphoton/spectra.hpp"

#include "biphoton/biphoton.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/summation.hpp"

#include <algorithm>
#include <cmath>

namespace biphoton {
namespace {

std::vector<double> envelope_weights(const DerivedScales& scales, long long max_mode) {
    const double step = 0.5 * scales.fsr_delta_omega * scales.tau0;
    std::vector<double> w(static_cast<std::size_t>(max_mode) + 1);
    for (long long m = 0; m <= max_mode; ++m) {
        const double s = sinc(static_cast<double>(m) * step);
        w[static_cast<std::size_t>(m)] = s * s;
    }
    return w;
}

long long resolve_modes(const DerivedScales& scales, double reach, long long requested) {
    if (requested >= 0) return requested;
    const long long window = static_cast<long long>(std::ceil(reach / scales.fsr_delta_omega));
    const long long envelope = scales.tau0 == 0.0 ? 64 : 2 * envelope_modes(scales);
    return std::max(window, 0LL) + envelope;
}

}  // namespace

std::string_view field_name(Field f) noexcept {
    return f == Field::Signal ? "signal" : "idler";
}

Field parse_field(std::string_view name) {
    if (name == "signal") return Field::Signal;
    if (name == "idler") return Field::Idler;
    throw Error(ErrorKind::InvalidArgument,
                "unknown field '" + std::string(name) + "' (expected signal or idler)");
}

long long envelope_modes(const DerivedScales& scales) {
    if (scales.tau0 == 0.0) {
        throw Error(ErrorKind::DegenerateGroupVelocity,
                    "spectral envelope is unbounded for tau0 == 0; give an explicit window");
    }
    return static_cast<long long>(
        std::ceil(constants::two_pi / (scales.fsr_delta_omega * std::abs(scales.tau0))));
}

AxisSpec default_spectrum_grid(const DerivedScales& scales, int points_per_gamma) {
    const double reach = (static_cast<double>(envelope_modes(scales)) + 0.5) * scales.fsr_delta_omega;
    const double spacing = scales.gamma / points_per_gamma;
    const auto half = static_cast<std::size_t>(std::ceil(reach / spacing));
    return {-spacing * static_cast<double>(half), spacing * static_cast<double>(half), 2 * half + 1};
}

Trace spectrum(Field field, const DerivedScales& scales, const FrequencyTriple& freqs,
               const AxisSpec& detuning_grid, long long max_mode, Normalization normalization) {
    detuning_grid.validate();
    if (detuning_grid.spacing() > scales.gamma / 16.0) {
        throw Error(ErrorKind::GridTooCoarse, "fewer than 16 spectrum points per gamma");
    }
    const double reach = std::max(std::abs(detuning_grid.start), std::abs(detuning_grid.stop));
    const long long modes = resolve_modes(scales, reach, max_mode);
    const auto w = envelope_weights(scales, modes);
    const double hw2 = 0.25 * scales.gamma * scales.gamma;
    const double fsr = scales.fsr_delta_omega;

    Trace trace;
    trace.axis = detuning_grid.values();
    trace.values.resize(trace.axis.size());
    for (std::size_t k = 0; k < trace.axis.size(); ++k) {
        const double delta = trace.axis[k];
        CompensatedSum s;
        for (long long m = -modes; m <= modes; ++m) {
            const double off = delta + static_cast<double>(m) * fsr;
            s.add(w[static_cast<std::size_t>(std::abs(m))] / (hw2 + off * off));
        }
        trace.values[k] = s.value();
    }
    trace.meta.kind = field == Field::Signal ? TraceKind::SignalSpectrum : TraceKind::IdlerSpectrum;
    trace.meta.center_frequency = field == Field::Signal ? freqs.signal() : freqs.idler();
    trace.normalize(normalization);
    return trace;
}

ComplexTrace g1(Field field, const DerivedScales& scales, const FrequencyTriple& freqs,
                const AxisSpec& tau_grid, long long max_mode, bool include_carrier) {
    tau_grid.validate();
    const long long modes = resolve_modes(scales, 0.0, max_mode);
    const double fsr = scales.fsr_delta_omega;
    if (modes > 0 && tau_grid.spacing() * static_cast<double>(modes) * fsr > constants::pi) {
        throw Error(ErrorKind::GridTooCoarse, "tau grid undersamples the outermost cavity mode");
    }
    const auto w = envelope_weights(scales, modes);
    CompensatedSum weight_total(w[0]);
    for (long long m = 1; m <= modes; ++m) weight_total.add(2.0 * w[static_cast<std::size_t>(m)]);
    const double norm = weight_total.value();
    const double center = field == Field::Signal ? freqs.signal() : freqs.idler();

    ComplexTrace out;
    out.axis = tau_grid.values();
    out.values.resize(out.axis.size());
    for (std::size_t k = 0; k < out.axis.size(); ++k) {
        const double tau = out.axis[k];
        CompensatedSum s(w[0]);
        for (long long m = 1; m <= modes; ++m) {
            s.add(2.0 * w[static_cast<std::size_t>(m)] * std::cos(static_cast<double>(m) * fsr * tau));
        }
        const double envelope = std::exp(-0.5 * scales.gamma * std::abs(tau)) * s.value() / norm;
        out.values[k] = include_carrier ? envelope * std::polar(1.0, -center * tau)
                                        : std::complex<double>(envelope, 0.0);
    }
    out.meta.kind = TraceKind::G1Magnitude;
    out.meta.center_frequency = center;
    return out;
}

}  // namespace biphoton
