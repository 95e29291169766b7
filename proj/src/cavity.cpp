#include "biphoton/cavity.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"

#include <cmath>
#include <cstdio>

namespace biphoton {

void CavityParams::validate() const {
    if (!(loss_rate_gamma > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cavity loss rate gamma must be > 0");
    }
    if (!(resonator_length_Lr > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "resonator length must be > 0");
    }
}

const char* RegimeReport::ratio_name(int which) noexcept {
    switch (which) {
        case KappaOverGamma: return "kappa/gamma";
        case GammaOverFsr: return "gamma/fsr";
        case FsrTimesTau0: return "fsr*|tau0|";
        default: return "?";
    }
}

std::string RegimeReport::summary() const {
    std::string out;
    char buf[96];
    for (int i = 0; i < 3; ++i) {
        std::snprintf(buf, sizeof buf, "%s=%.6g %s; ", ratio_name(i), ratios[i],
                      passed[i] ? "pass" : "fail");
        out += buf;
    }
    out += ok ? "overall=pass" : "overall=fail";
    return out;
}

double round_trip_time(const CrystalParams& crystal, const CavityParams& cavity,
                       const FrequencyTriple& freqs) {
    if (cavity.resonator_length_Lr < crystal.length_l) {
        throw Error(ErrorKind::GeometryError,
                    "resonator length L_r is shorter than the crystal length l");
    }
    const double vs = group_velocity(crystal.dispersion_signal, freqs.signal());
    return 2.0 * crystal.length_l / vs +
           2.0 * (cavity.resonator_length_Lr - crystal.length_l) / constants::speed_of_light;
}

double free_spectral_range(double round_trip) {
    if (!(round_trip > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "round-trip time must be > 0");
    }
    return constants::two_pi / round_trip;
}

double mode_frequency(const FrequencyTriple& freqs, double fsr, long long m) {
    return freqs.signal() + static_cast<double>(m) * fsr;
}

double central_mode_number(const CrystalParams& crystal, const FrequencyTriple& freqs) {
    const double n_s = crystal.dispersion_signal.index(freqs.signal());
    return freqs.signal() * n_s * crystal.length_l / (constants::pi * constants::speed_of_light);
}

RegimeReport check_regime(const DerivedScales& scales, double threshold) {
    RegimeReport report;
    report.threshold = threshold;
    report.ratios[RegimeReport::KappaOverGamma] = scales.kappa / scales.gamma;
    report.ratios[RegimeReport::GammaOverFsr] = scales.gamma / scales.fsr_delta_omega;
    report.ratios[RegimeReport::FsrTimesTau0] = scales.fsr_delta_omega * std::abs(scales.tau0);
    report.ok = true;
    for (int i = 0; i < 3; ++i) {
        report.passed[i] = report.ratios[i] <= threshold;
        report.ok = report.ok && report.passed[i];
    }
    return report;
}

}  // namespace biphoton
