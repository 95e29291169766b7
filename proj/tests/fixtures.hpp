#pragma once

// Shared scenario builders for the unit and acceptance tests.

#include "biphoton/constants.hpp"
#include "biphoton/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace fixtures {

using namespace biphoton;

inline constexpr double crystal_l = 0.01;  // m
inline constexpr double n_signal = 1.8;
inline constexpr double cavity_Lr = 0.05;  // m
inline constexpr double omega_p = 3.54e15;
inline constexpr double omega_s = 1.77e15;
inline constexpr double pump_field = 1e-17;  // keeps kappa / gamma near 1e-4

inline FrequencyRange range() { return {1e14, 1e16}; }

inline CrystalParams crystal(double n_idler, double n_pump = 1.9, double length = crystal_l) {
    return {length,
            1e-12,
            1e-8,
            DispersionModel::constant(n_signal, range()),
            DispersionModel::constant(n_idler, range()),
            DispersionModel::constant(n_pump, range())};
}

// Round-trip time of the reference geometry with a constant signal index.
inline double round_trip() {
    return (2.0 * crystal_l * n_signal + 2.0 * (cavity_Lr - crystal_l)) / constants::speed_of_light;
}

inline double fsr() { return constants::two_pi / round_trip(); }

/// Reference scenario with fsr * tau0 = `product` (sign included) and
/// gamma = gamma_over_fsr * fsr.
inline Scenario make(double product, double gamma_over_fsr = 0.05, double Lr = cavity_Lr) {
    const double tau0 = product / fsr();
    const double n_idler = n_signal + tau0 * constants::speed_of_light / crystal_l;
    ScenarioConfig cfg{crystal(n_idler),
                       {Lr, gamma_over_fsr * fsr()},
                       {pump_field},
                       {omega_p, omega_s, std::nullopt, std::nullopt},
                       default_regime_threshold,
                       {},
                       {}};
    return assemble_scenario(std::move(cfg));
}

inline const char* reference_json() {
    return R"({
  "crystal": {
    "length_l": 0.01, "chi": 1e-12, "cross_section_A": 1e-8,
    "dispersion_signal": {"kind": "Constant", "parameters": [1.8], "validity_range": [1e14, 1e16]},
    "dispersion_idler": {"kind": "Constant", "parameters": [1.83692394679732], "validity_range": [1e14, 1e16]},
    "dispersion_pump": {"kind": "Constant", "parameters": [1.9], "validity_range": [1e14, 1e16]}
  },
  "cavity": {"resonator_length_Lr": 0.05, "loss_rate_gamma": 811918779.012},
  "pump": {"field_amplitude_EP": 1e-17},
  "frequencies": {"omega_P": 3.54e15, "omega_S": 1.77e15}
})";
}

/// Indices of strict local maxima above `floor` (relative to the global max).
inline std::vector<std::size_t> local_maxima(const std::vector<double>& v, double floor) {
    const double top = *std::max_element(v.begin(), v.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > floor * top && v[i] >= v[i - 1] && v[i] > v[i + 1]) out.push_back(i);
    }
    return out;
}

inline std::size_t nearest(const std::vector<double>& axis, double x) {
    const auto it = std::lower_bound(axis.begin(), axis.end(), x);
    if (it == axis.begin()) return 0;
    if (it == axis.end()) return axis.size() - 1;
    const auto i = static_cast<std::size_t>(it - axis.begin());
    return (x - axis[i - 1] <= axis[i] - x) ? i - 1 : i;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0bd1ULL + salt); }

}  // namespace fixtures
