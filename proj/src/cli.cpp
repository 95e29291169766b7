#include "biphoton/cli.hpp"

#include "biphoton/biphoton.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/spectra.hpp"
#include "biphoton/trace_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace biphoton {
namespace {

namespace fs = std::filesystem;

constexpr double max_grid_points = 5e7;

struct Flags {
    std::string config;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    bool strict_regime = false;
    bool plot = false;
    std::string tier = "series";
    std::string field = "signal";
    std::optional<double> resolution;
    bool carrier = false;
    std::optional<long long> modes;
};

std::size_t points_for(double span, double max_spacing) {
    const double n = std::ceil(span / max_spacing) + 1.0;
    if (!(n <= max_grid_points)) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid would need " + format_double(n) + " points; coarsen the grid settings");
    }
    return static_cast<std::size_t>(n);
}

std::string summary_line(const Scenario& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "tau0=%.6e s T=%.6e s fsr=%.6e rad/s gamma=%.6e rad/s kappa=%.6e 1/s regime=%s",
                  s.scales.tau0, s.scales.round_trip_T, s.scales.fsr_delta_omega, s.scales.gamma,
                  s.scales.kappa, s.scales.regime.ok ? "pass" : "fail");
    return buf;
}

Table base_table(const Scenario& s) {
    Table t;
    t.header.emplace_back("scenario_hash", s.hash);
    t.header.emplace_back("regime", s.scales.regime.summary());
    return t;
}

// Puts the scenario-wide entries after the trace's own header lines.
void add_scenario_header(Table& t, const Scenario& s) {
    for (auto& [key, value] : t.header) {
        if (key == "scenario_hash") value = s.hash;
    }
    t.header.emplace_back("regime", s.scales.regime.summary());
}

struct Output {
    Table table;
    std::string stem;
    std::string title;
    // Plot data; empty for scalar reports.
    std::vector<double> x, y;
    std::string x_label, y_label;
};

Output run_scales(const Scenario& s) {
    Output o{base_table(s), "scales", "derived scales", {}, {}, {}, {}};
    const auto& d = s.scales;
    o.table.columns = {{"tau0_s", {d.tau0}},
                       {"round_trip_T_s", {d.round_trip_T}},
                       {"fsr_rad_per_s", {d.fsr_delta_omega}},
                       {"gamma_rad_per_s", {d.gamma}},
                       {"kappa_per_s", {d.kappa}},
                       {"mode_number_m0", {d.mode_number_m0}},
                       {"omega_P_rad_per_s", {s.freqs.pump()}},
                       {"omega_S_rad_per_s", {s.freqs.signal()}},
                       {"omega_I_rad_per_s", {s.freqs.idler()}}};
    return o;
}

Output run_rate(const Scenario& s, std::string& extra) {
    const auto& c = s.config;
    const double prefactor = rate_prefactor(c.crystal, c.pump, s.freqs);
    const double step = 0.5 * s.scales.fsr_delta_omega * std::abs(s.scales.tau0);
    if (s.scales.tau0 == 0.0) {
        throw Error(ErrorKind::NonConvergence, "mode sum diverges for tau0 == 0");
    }
    const auto sum = sinc2_mode_sum(step, c.grids.rate_initial_modes);
    const double mode_sum = prefactor * s.scales.fsr_delta_omega * sum.value;
    const double continuum = rate_continuum(c.crystal, c.pump, s.freqs, s.scales);
    Output o{base_table(s), "rate", "biphoton rate", {}, {}, {}, {}};
    o.table.columns = {{"rate_mode_sum_per_s", {mode_sum}},
                       {"rate_continuum_per_s", {continuum}},
                       {"modes_each_side", {static_cast<double>(sum.modes)}},
                       {"relative_error_bound", {sum.error_bound / sum.value}}};
    char buf[128];
    std::snprintf(buf, sizeof buf, " rate_mode_sum=%.6e 1/s rate_continuum=%.6e 1/s", mode_sum,
                  continuum);
    extra = buf;
    return o;
}

Output run_regime(const Scenario& s, std::string& extra) {
    Output o{base_table(s), "regime", "regime check", {}, {}, {}, {}};
    const auto& r = s.scales.regime;
    o.table.columns = {{"kappa_over_gamma", {r.ratios[0]}},
                       {"gamma_over_fsr", {r.ratios[1]}},
                       {"fsr_times_abs_tau0", {r.ratios[2]}},
                       {"threshold", {r.threshold}},
                       {"pass", {r.ok ? 1.0 : 0.0}}};
    extra = " " + r.summary();
    return o;
}

Output run_spectrum(const Scenario& s, Field field) {
    const auto& g = s.config.grids;
    AxisSpec grid;
    if (g.spectrum_window_modes >= 0) {
        const double reach = (static_cast<double>(g.spectrum_window_modes) + 0.5) *
                             s.scales.fsr_delta_omega;
        const std::size_t n = points_for(2.0 * reach, s.scales.gamma / g.spectrum_points_per_gamma);
        grid = {-reach, reach, n};
    } else {
        grid = default_spectrum_grid(s.scales, g.spectrum_points_per_gamma);
    }
    auto trace = spectrum(field, s.scales, s.freqs, grid, g.spectrum_max_mode,
                          s.config.output.normalization);
    trace.meta.scenario_hash = s.hash;
    Output o{trace_table(trace, "detuning_rad_per_s", "spectrum"),
             "spectrum_" + std::string(field_name(field)),
             std::string(field_name(field)) + " spectrum",
             trace.axis,
             trace.values,
             "detuning (rad/s)",
             "S (normalised)"};
    add_scenario_header(o.table, s);
    return o;
}

Output run_g1(const Scenario& s, Field field, bool carrier) {
    const auto& g = s.config.grids;
    const auto grid = g1_tau_grid(s, g.g1_max_mode);
    const auto trace = g1(field, s.scales, s.freqs, grid, g.g1_max_mode, carrier);
    auto mag = trace.magnitude();
    mag.meta.scenario_hash = s.hash;
    Output o{trace_table(mag, "tau_s", "g1_abs"),
             "g1_" + std::string(field_name(field)),
             std::string(field_name(field)) + " first-order correlation",
             mag.axis,
             mag.values,
             "tau (s)",
             "|g1|"};
    Column re{"g1_re", {}}, im{"g1_im", {}};
    for (const auto& z : trace.values) {
        re.values.push_back(z.real());
        im.values.push_back(z.imag());
    }
    o.table.columns.push_back(std::move(re));
    o.table.columns.push_back(std::move(im));
    o.table.header.emplace_back("carrier", carrier ? "included" : "omitted");
    add_scenario_header(o.table, s);
    return o;
}

Output run_g2(const Scenario& s, G2Tier tier, std::optional<double> resolution) {
    const auto& g = s.config.grids;
    G2Request req;
    req.tier = tier;
    req.max_mode = g.g2_max_mode;
    req.quad_points = g.g2_quad_points;
    req.j_max = g.g2_j_max;
    req.resolution_dT = resolution.value_or(g.g2_resolution_dT);
    if (tier == G2Tier::Averaged && !(req.resolution_dT > 0.0)) {
        throw Error(ErrorKind::ValidationError,
                    "grids.g2.resolution_dT: required for the averaged tier (or pass --resolution)");
    }
    req.tau_grid = g2_tau_grid(s, tier, req.resolution_dT);
    auto trace = g2(req, s.scales);
    trace.meta.scenario_hash = s.hash;
    Output o{trace_table(trace, "tau_s", "g2"),
             "g2_" + std::string(tier_name(tier)),
             "G2 cross-correlation (" + std::string(tier_name(tier)) + ")",
             trace.axis,
             trace.values,
             "tau (s)",
             "G2 (peak = 1)"};
    if (tier == G2Tier::Averaged) {
        o.table.header.emplace_back("resolution_dT_s", format_double(req.resolution_dT));
    }
    add_scenario_header(o.table, s);
    return o;
}

Output run_wavefunction(const Scenario& s, std::optional<long long> modes) {
    const auto& g = s.config.grids;
    long long m = modes.value_or(g.wavefunction_modes);
    if (m < 0) m = envelope_modes(s.scales);
    const double half = g.wavefunction_halfwidth_gammas;
    const int points = g.wavefunction_points > 0
                           ? g.wavefunction_points
                           : static_cast<int>(std::ceil(2.0 * half * 16.0)) + 1;
    if (static_cast<double>(2 * m + 1) * points > max_grid_points) {
        throw Error(ErrorKind::InvalidArgument, "wavefunction grid too large; lower the mode count");
    }
    const auto grid = wavefunction_grid(s.scales, m, half, points);
    Output o{base_table(s), "wavefunction", "biphoton wave function, m = 0", {}, {}, {}, {}};
    o.table.header.emplace_back("normalization_constant", format_double(grid.normalization));
    Column mode{"m", {}}, det{"detuning_rad_per_s", {}}, re{"psi_re", {}}, im{"psi_im", {}};
    for (long long k = -m; k <= m; ++k) {
        for (std::size_t i = 0; i < grid.detuning.size(); ++i) {
            const auto z = grid.at(k, i);
            mode.values.push_back(static_cast<double>(k));
            det.values.push_back(grid.detuning[i]);
            re.values.push_back(z.real());
            im.values.push_back(z.imag());
            if (k == 0) {
                o.x.push_back(grid.detuning[i]);
                o.y.push_back(std::norm(z));
            }
        }
    }
    o.table.columns = {std::move(mode), std::move(det), std::move(re), std::move(im)};
    o.x_label = "detuning (rad/s)";
    o.y_label = "|psi|^2";
    return o;
}

fs::path write_output(const Output& o, const fs::path& dir, OutputFormat format, bool plot) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
    const fs::path file = dir / (o.stem + (format == OutputFormat::Csv ? ".csv" : ".json"));
    {
        std::ofstream f(file, std::ios::binary);
        if (!f) throw Error(ErrorKind::IoError, "cannot write " + file.string());
        if (format == OutputFormat::Csv) {
            write_csv(f, o.table);
        } else {
            write_json(f, o.table);
        }
        if (!f) throw Error(ErrorKind::IoError, "write failed for " + file.string());
    }
    if (plot && !o.x.empty()) {
        const fs::path svg = dir / (o.stem + ".svg");
        std::ofstream f(svg, std::ios::binary);
        if (!f) throw Error(ErrorKind::IoError, "cannot write " + svg.string());
        write_svg(f, o.x, o.y, o.title, o.x_label, o.y_label);
    }
    return file;
}

void error_line(std::ostream& err, int code, std::string_view kind, const std::string& message) {
    std::string flat = message;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    err << "error: code=" << code << " kind=" << kind << " message=" << flat << '\n';
}

}  // namespace

AxisSpec g2_tau_grid(const Scenario& s, G2Tier tier, double resolution_dT) {
    const auto& g = s.config.grids;
    const double period = s.scales.round_trip_T;
    const double start = -0.5 * period;
    const double stop = g.g2_periods * period;
    double spacing = 0.0;
    if (tier == G2Tier::Averaged) {
        if (!(resolution_dT > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "averaged tier needs a positive resolution dT");
        }
        spacing = resolution_dT / g.g2_points_per_tau0;
    } else {
        if (s.scales.tau0 == 0.0) {
            throw Error(ErrorKind::DegenerateGroupVelocity,
                        "G2 peaks have zero width for tau0 == 0; use the averaged tier");
        }
        spacing = std::abs(s.scales.tau0) / g.g2_points_per_tau0;
    }
    return {start, stop, points_for(stop - start, spacing)};
}

AxisSpec g1_tau_grid(const Scenario& s, long long max_mode) {
    const auto& d = s.scales;
    long long modes = max_mode;
    if (modes < 0) modes = d.tau0 == 0.0 ? 64 : 2 * envelope_modes(d);
    const double half = s.config.grids.g1_window_gammas / d.gamma;
    // 0.9 of the Nyquist spacing of the outermost mode.
    double spacing = 0.9 * constants::pi / (static_cast<double>(std::max(modes, 1LL)) * d.fsr_delta_omega);
    spacing = std::min(spacing, 0.0625 / d.gamma);
    return {-half, half, points_for(2.0 * half, spacing)};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags flags;
    CLI::App app{"Biphoton generation in a single-resonant OPO far below threshold",
                 "biphoton-opo"};
    app.require_subcommand(1);
    app.add_option("--config", flags.config, "Scenario file (JSON)")->required();
    app.add_option("--out", flags.out_dir, "Output directory (overrides output.directory)");
    app.add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--strict-regime", flags.strict_regime,
                 "Exit with code 3 when the regime check fails");
    app.add_flag("--plot", flags.plot, "Also write an SVG plot of the trace");

    auto* scales_cmd = app.add_subcommand("scales", "Derived scales tau0, T, fsr, gamma, kappa");
    auto* rate_cmd = app.add_subcommand("rate", "Biphoton rate, mode sum and continuum limit");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Signal or idler output spectrum");
    auto* g1_cmd = app.add_subcommand("g1", "First-order correlation function");
    auto* g2_cmd = app.add_subcommand("g2", "Signal-idler cross-correlation G2");
    auto* wf_cmd = app.add_subcommand("wavefunction", "Biphoton amplitude on a mode/detuning grid");
    app.add_subcommand("check-regime", "Check kappa << gamma << fsr << 1/|tau0|");
    for (auto* cmd : {spectrum_cmd, g1_cmd}) {
        cmd->add_option("--field", flags.field, "signal or idler")
            ->check(CLI::IsMember({"signal", "idler"}));
    }
    g1_cmd->add_flag("--carrier", flags.carrier, "Keep the optical carrier exp(-i omega tau)");
    g2_cmd->add_option("--tier", flags.tier, "exact, series, compact or averaged")
        ->check(CLI::IsMember({"exact", "series", "compact", "averaged"}));
    g2_cmd->add_option("--resolution", flags.resolution, "Detector resolution dT in seconds")
        ->check(CLI::PositiveNumber);
    wf_cmd->add_option("--modes", flags.modes, "Modes kept on each side of m = 0")
        ->check(CLI::NonNegativeNumber);
    for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        error_line(err, exit_config, "UsageError", e.what());
        return exit_config;
    }

    try {
        auto config = parse_scenario_config([&] {
            std::ifstream in(flags.config, std::ios::binary);
            if (!in) throw Error(ErrorKind::IoError, "cannot open scenario file " + flags.config);
            std::ostringstream text;
            text << in.rdbuf();
            return text.str();
        }());
        if (flags.out_dir) config.output.directory = *flags.out_dir;
        if (flags.format) config.output.format = *flags.format == "json" ? OutputFormat::Json
                                                                         : OutputFormat::Csv;
        const Scenario s = assemble_scenario(std::move(config));

        if (!s.scales.regime.ok) {
            if (flags.strict_regime) {
                out << summary_line(s) << '\n';
                error_line(err, exit_regime, "RegimeViolation", s.scales.regime.summary());
                return exit_regime;
            }
            err << "warning: regime check failed: " << s.scales.regime.summary() << '\n';
        }

        std::string extra;
        Output o;
        if (*scales_cmd) {
            o = run_scales(s);
        } else if (*rate_cmd) {
            o = run_rate(s, extra);
        } else if (*spectrum_cmd) {
            o = run_spectrum(s, parse_field(flags.field));
        } else if (*g1_cmd) {
            o = run_g1(s, parse_field(flags.field), flags.carrier);
        } else if (*g2_cmd) {
            o = run_g2(s, parse_tier(flags.tier), flags.resolution);
        } else if (*wf_cmd) {
            o = run_wavefunction(s, flags.modes);
        } else {
            o = run_regime(s, extra);
        }
        const auto file = write_output(o, s.config.output.directory, s.config.output.format,
                                       flags.plot);
        out << summary_line(s) << extra << " file=" << file.string() << '\n';
        return exit_ok;
    } catch (const Error& e) {
        const int code = is_config_error(e.kind()) ? exit_config : exit_numeric;
        error_line(err, code, kind_name(e.kind()), e.what());
        return code;
    } catch (const std::exception& e) {
        error_line(err, exit_numeric, "InternalError", e.what());
        return exit_numeric;
    }
}

}  // namespace biphoton
