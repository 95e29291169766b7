#pragma once

#include "biphoton/biphoton.hpp"
#include "biphoton/cavity.hpp"
#include "biphoton/dispersion.hpp"
#include "biphoton/trace.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace biphoton {

/// Either an explicit triple or a pump frequency plus a bracket for the
/// phase-matching solver. omega_I may be omitted from the explicit form.
struct FrequencySpec {
    double omega_p = 0.0;
    std::optional<double> omega_s;
    std::optional<double> omega_i;
    std::optional<std::pair<double, double>> bracket;
};

enum class OutputFormat { Csv, Json };

struct OutputSettings {
    std::string directory = "out";
    OutputFormat format = OutputFormat::Csv;
    Normalization normalization = Normalization::PeakUnity;
};

/// Grid and truncation knobs; negative / zero values mean "choose automatically".
struct GridSettings {
    int spectrum_points_per_gamma = 16;
    long long spectrum_window_modes = -1;
    long long spectrum_max_mode = -1;

    double g1_window_gammas = 20.0;
    long long g1_max_mode = -1;

    double g2_periods = 5.0;
    int g2_points_per_tau0 = 8;
    long long g2_max_mode = -1;
    int g2_quad_points = 0;
    long long g2_j_max = 0;
    double g2_resolution_dT = 0.0;

    long long wavefunction_modes = -1;
    double wavefunction_halfwidth_gammas = 10.0;
    int wavefunction_points = 0;

    long long rate_initial_modes = 0;
};

struct ScenarioConfig {
    CrystalParams crystal;
    CavityParams cavity;
    PumpParams pump;
    FrequencySpec frequencies;
    double regime_threshold = default_regime_threshold;
    OutputSettings output;
    GridSettings grids;
};

struct Scenario {
    ScenarioConfig config;
    FrequencyTriple freqs;
    DerivedScales scales;
    std::string hash;  // 16 hex digits
};

/// Parses the JSON scenario format (see README). Throws ParseError with the
/// line and column of malformed text and ValidationError with the dotted
/// field path of the offending entry.
ScenarioConfig parse_scenario_config(std::string_view json_text);

/// Resolves the frequencies (running the phase-matching solver when a
/// bracket is given), derives the scales and stamps the hash.
Scenario assemble_scenario(ScenarioConfig config);

Scenario load_scenario(const std::filesystem::path& path);

/// FNV-1a digest over the bit patterns of every physical field, in a fixed
/// order. Output, grid and regime-threshold settings do not contribute.
std::string scenario_hash(const ScenarioConfig& config, const FrequencyTriple& freqs);

}  // namespace biphoton
