#pragma once

#include "biphoton/dispersion.hpp"

#include <array>
#include <string>

namespace biphoton {

struct CavityParams {
    double resonator_length_Lr;  // m
    double loss_rate_gamma;      // rad/s, field damping of the one-sided cavity

    void validate() const;
};

inline constexpr double default_regime_threshold = 0.1;

/// The three "much less than" checks kappa << gamma << fsr << 1/|tau0|,
/// each expressed as a ratio that must not exceed the threshold.
struct RegimeReport {
    enum Ratio { KappaOverGamma = 0, GammaOverFsr = 1, FsrTimesTau0 = 2 };

    std::array<double, 3> ratios{};
    std::array<bool, 3> passed{};
    double threshold = default_regime_threshold;
    bool ok = false;

    static const char* ratio_name(int which) noexcept;
    /// One line, e.g. "kappa/gamma=... pass; gamma/fsr=... pass; ...; overall=pass".
    std::string summary() const;
};

struct DerivedScales {
    double tau0 = 0.0;             // s, signed
    double round_trip_T = 0.0;     // s
    double fsr_delta_omega = 0.0;  // rad/s
    double gamma = 0.0;            // rad/s
    double kappa = 0.0;            // 1/s, infinite when tau0 == 0
    double mode_number_m0 = 0.0;   // informational only
    RegimeReport regime;
};

/// T = 2 l / v_g,S + 2 (L_r - l) / c. Throws GeometryError when L_r < l.
double round_trip_time(const CrystalParams& crystal, const CavityParams& cavity,
                       const FrequencyTriple& freqs);

double free_spectral_range(double round_trip);

/// omega_S + m * fsr; the cavity is taken as tuned to resonance at omega_S.
double mode_frequency(const FrequencyTriple& freqs, double fsr, long long m);

/// omega_S n_S l / (pi c), the longitudinal mode number of the central mode.
double central_mode_number(const CrystalParams& crystal, const FrequencyTriple& freqs);

RegimeReport check_regime(const DerivedScales& scales,
                          double threshold = default_regime_threshold);

}  // namespace biphoton
