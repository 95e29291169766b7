#include "biphoton/scenario.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/scales.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace biphoton {
namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ValidationError, path + ": " + what);
}

std::string join(const std::string& parent, std::string_view key) {
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

// Object view that remembers where it sits in the document.
class Node {
  public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) invalid(path_.empty() ? "(root)" : path_, "expected an object");
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        for (const auto& [key, value] : j_.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                invalid(join(path_, key), "unknown field");
            }
        }
    }

    bool has(std::string_view key) const { return j_.contains(std::string(key)); }

    Node object(std::string_view key) const {
        if (!has(key)) invalid(join(path_, key), "missing required field");
        return Node(j_.at(std::string(key)), join(path_, key));
    }

    std::optional<Node> optional_object(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        return Node(j_.at(std::string(key)), join(path_, key));
    }

    double number(std::string_view key) const {
        if (!has(key)) invalid(join(path_, key), "missing required field");
        return as_number(j_.at(std::string(key)), join(path_, key));
    }

    std::optional<double> optional_number(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        return as_number(j_.at(std::string(key)), join(path_, key));
    }

    template <class T>
    void maybe_integer(std::string_view key, T& out) const {
        if (!has(key)) return;
        const auto& v = j_.at(std::string(key));
        if (!v.is_number_integer()) invalid(join(path_, key), "expected an integer");
        out = v.get<T>();
    }

    void maybe_number(std::string_view key, double& out) const {
        if (auto v = optional_number(key)) out = *v;
    }

    std::optional<std::string> optional_string(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(std::string(key));
        if (!v.is_string()) invalid(join(path_, key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(std::string_view key) const {
        if (!has(key)) invalid(join(path_, key), "missing required field");
        const auto& v = j_.at(std::string(key));
        if (!v.is_array()) invalid(join(path_, key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], join(path_, key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    const std::string& path() const { return path_; }

  private:
    static double as_number(const json& v, const std::string& path) {
        if (!v.is_number()) invalid(path, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) invalid(path, "expected a finite number");
        return x;
    }

    const json& j_;
    std::string path_;
};

double positive(const Node& n, std::string_view key) {
    const double x = n.number(key);
    if (!(x > 0.0)) invalid(join(n.path(), key), "must be > 0");
    return x;
}

DispersionModel parse_dispersion(const Node& n) {
    n.allow_only({"kind", "parameters", "validity_range"});
    const auto kind_text = n.optional_string("kind");
    if (!kind_text) invalid(join(n.path(), "kind"), "missing required field");
    const auto range = n.numbers("validity_range");
    if (range.size() != 2) invalid(join(n.path(), "validity_range"), "expected [omega_min, omega_max]");
    try {
        return DispersionModel(parse_dispersion_kind(*kind_text), n.numbers("parameters"),
                               {range[0], range[1]});
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ValidationError) throw;
        invalid(n.path(), e.what());
    }
}

void parse_grids(const Node& n, GridSettings& g) {
    n.allow_only({"spectrum", "g1", "g2", "wavefunction", "rate"});
    if (auto s = n.optional_object("spectrum")) {
        s->allow_only({"points_per_gamma", "window_modes", "max_mode"});
        s->maybe_integer("points_per_gamma", g.spectrum_points_per_gamma);
        s->maybe_integer("window_modes", g.spectrum_window_modes);
        s->maybe_integer("max_mode", g.spectrum_max_mode);
        if (g.spectrum_points_per_gamma < 16) {
            invalid(s->path() + ".points_per_gamma", "must be >= 16");
        }
    }
    if (auto s = n.optional_object("g1")) {
        s->allow_only({"window_gammas", "max_mode"});
        s->maybe_number("window_gammas", g.g1_window_gammas);
        s->maybe_integer("max_mode", g.g1_max_mode);
        if (!(g.g1_window_gammas > 0.0)) invalid(s->path() + ".window_gammas", "must be > 0");
    }
    if (auto s = n.optional_object("g2")) {
        s->allow_only({"periods", "points_per_tau0", "max_mode", "quad_points", "j_max",
                       "resolution_dT"});
        s->maybe_number("periods", g.g2_periods);
        s->maybe_integer("points_per_tau0", g.g2_points_per_tau0);
        s->maybe_integer("max_mode", g.g2_max_mode);
        s->maybe_integer("quad_points", g.g2_quad_points);
        s->maybe_integer("j_max", g.g2_j_max);
        s->maybe_number("resolution_dT", g.g2_resolution_dT);
        if (!(g.g2_periods > 0.0)) invalid(s->path() + ".periods", "must be > 0");
        if (g.g2_points_per_tau0 < 8) invalid(s->path() + ".points_per_tau0", "must be >= 8");
    }
    if (auto s = n.optional_object("wavefunction")) {
        s->allow_only({"modes", "halfwidth_gammas", "points"});
        s->maybe_integer("modes", g.wavefunction_modes);
        s->maybe_number("halfwidth_gammas", g.wavefunction_halfwidth_gammas);
        s->maybe_integer("points", g.wavefunction_points);
    }
    if (auto s = n.optional_object("rate")) {
        s->allow_only({"initial_modes"});
        s->maybe_integer("initial_modes", g.rate_initial_modes);
    }
}

ScenarioConfig parse_root(const json& doc) {
    const Node root(doc, "");
    root.allow_only({"crystal", "cavity", "pump", "frequencies", "regime_threshold", "output",
                     "grids"});

    const Node c = root.object("crystal");
    c.allow_only({"length_l", "chi", "cross_section_A", "dispersion_signal", "dispersion_idler",
                  "dispersion_pump"});
    CrystalParams crystal{positive(c, "length_l"),
                          positive(c, "chi"),
                          positive(c, "cross_section_A"),
                          parse_dispersion(c.object("dispersion_signal")),
                          parse_dispersion(c.object("dispersion_idler")),
                          parse_dispersion(c.object("dispersion_pump"))};

    const Node cav = root.object("cavity");
    cav.allow_only({"resonator_length_Lr", "loss_rate_gamma"});
    CavityParams cavity{positive(cav, "resonator_length_Lr"), positive(cav, "loss_rate_gamma")};
    if (cavity.resonator_length_Lr < crystal.length_l) {
        invalid("cavity.resonator_length_Lr", "must be >= crystal.length_l");
    }

    const Node p = root.object("pump");
    p.allow_only({"field_amplitude_EP"});
    PumpParams pump{positive(p, "field_amplitude_EP")};

    const Node f = root.object("frequencies");
    f.allow_only({"omega_P", "omega_S", "omega_I", "bracket"});
    FrequencySpec freqs;
    freqs.omega_p = positive(f, "omega_P");
    if (f.has("omega_S")) freqs.omega_s = positive(f, "omega_S");
    if (f.has("omega_I")) freqs.omega_i = positive(f, "omega_I");
    if (f.has("bracket")) {
        const auto b = f.numbers("bracket");
        if (b.size() != 2) invalid("frequencies.bracket", "expected [omega_lo, omega_hi]");
        freqs.bracket = std::pair{b[0], b[1]};
    }
    const bool explicit_given = freqs.omega_s.has_value() || freqs.omega_i.has_value();
    if (explicit_given && freqs.bracket) invalid("frequencies", "mutually exclusive");
    if (!explicit_given && !freqs.bracket) {
        invalid("frequencies", "need omega_S (and optionally omega_I) or a bracket");
    }
    if (freqs.omega_i && !freqs.omega_s) invalid("frequencies.omega_S", "missing required field");

    ScenarioConfig config{std::move(crystal), cavity, pump, freqs, default_regime_threshold, {}, {}};
    if (auto t = root.optional_number("regime_threshold")) {
        if (!(*t > 0.0)) invalid("regime_threshold", "must be > 0");
        config.regime_threshold = *t;
    }
    if (auto o = root.optional_object("output")) {
        o->allow_only({"directory", "format", "normalization"});
        if (auto d = o->optional_string("directory")) config.output.directory = *d;
        if (auto fmt = o->optional_string("format")) {
            if (*fmt == "csv") {
                config.output.format = OutputFormat::Csv;
            } else if (*fmt == "json") {
                config.output.format = OutputFormat::Json;
            } else {
                invalid("output.format", "expected csv or json");
            }
        }
        if (auto nm = o->optional_string("normalization")) {
            try {
                config.output.normalization = parse_normalization(*nm);
            } catch (const Error& e) {
                invalid("output.normalization", e.what());
            }
        }
    }
    if (auto g = root.optional_object("grids")) parse_grids(*g, config.grids);
    return config;
}

void append_bits(std::uint64_t& h, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);  // fold -0 into +0
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
    }
}

void append_model(std::uint64_t& h, const DispersionModel& m) {
    append_bits(h, static_cast<double>(static_cast<int>(m.kind())));
    append_bits(h, static_cast<double>(m.parameters().size()));
    for (double p : m.parameters()) append_bits(h, p);
    append_bits(h, m.validity().lo);
    append_bits(h, m.validity().hi);
}

}  // namespace

ScenarioConfig parse_scenario_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        // The library message already carries "line L, column C".
        throw Error(ErrorKind::ParseError, e.what());
    }
    try {
        return parse_root(doc);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ValidationError, e.what());
    }
}

std::string scenario_hash(const ScenarioConfig& config, const FrequencyTriple& freqs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto& c = config.crystal;
    append_bits(h, c.length_l);
    append_bits(h, c.chi);
    append_bits(h, c.cross_section_A);
    append_model(h, c.dispersion_signal);
    append_model(h, c.dispersion_idler);
    append_model(h, c.dispersion_pump);
    append_bits(h, config.cavity.resonator_length_Lr);
    append_bits(h, config.cavity.loss_rate_gamma);
    append_bits(h, config.pump.field_amplitude_EP);
    append_bits(h, freqs.pump());
    append_bits(h, freqs.signal());
    append_bits(h, freqs.idler());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario assemble_scenario(ScenarioConfig config) {
    const auto& fs = config.frequencies;
    auto triple = [&]() -> FrequencyTriple {
        if (fs.bracket) return phase_match(config.crystal, fs.omega_p, *fs.bracket);
        try {
            if (fs.omega_i) return FrequencyTriple::make(fs.omega_p, *fs.omega_s, *fs.omega_i);
            return FrequencyTriple::from_pump_and_signal(fs.omega_p, *fs.omega_s);
        } catch (const Error& e) {
            invalid("frequencies", e.what());
        }
    }();
    DerivedScales scales;
    try {
        scales = derive_scales(config.crystal, config.cavity, config.pump, triple,
                               config.regime_threshold);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::OutOfRange || e.kind() == ErrorKind::InvalidArgument ||
            e.kind() == ErrorKind::GeometryError) {
            invalid("frequencies", e.what());
        }
        throw;
    }
    std::string hash = scenario_hash(config, triple);
    return Scenario{std::move(config), triple, scales, std::move(hash)};
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open scenario file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return assemble_scenario(parse_scenario_config(text.str()));
}

}  // namespace biphoton
