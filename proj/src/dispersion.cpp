#include "biphoton/dispersion.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace biphoton {
namespace {

constexpr int validity_samples = 1025;

double wavelength_um(double omega) {
    return constants::two_pi * constants::speed_of_light / omega * 1e6;
}

std::string describe(double omega, const FrequencyRange& r) {
    std::ostringstream os;
    os.precision(17);
    os << "omega=" << omega << " rad/s outside validity range [" << r.lo << ", " << r.hi << "]";
    return os.str();
}

}  // namespace

std::string_view kind_name(DispersionModel::Kind kind) noexcept {
    switch (kind) {
        case DispersionModel::Kind::Constant: return "Constant";
        case DispersionModel::Kind::LinearInOmega: return "LinearInOmega";
        case DispersionModel::Kind::Sellmeier: return "Sellmeier";
    }
    return "Unknown";
}

DispersionModel::Kind parse_dispersion_kind(std::string_view name) {
    if (name == "Constant") return DispersionModel::Kind::Constant;
    if (name == "LinearInOmega") return DispersionModel::Kind::LinearInOmega;
    if (name == "Sellmeier") return DispersionModel::Kind::Sellmeier;
    throw Error(ErrorKind::InvalidArgument,
                "unknown dispersion kind '" + std::string(name) +
                    "' (expected Constant, LinearInOmega or Sellmeier)");
}

FrequencyRange DispersionModel::default_range() noexcept {
    return {0.0, std::numeric_limits<double>::infinity()};
}

DispersionModel DispersionModel::constant(double n, FrequencyRange validity) {
    return DispersionModel(Kind::Constant, {n}, validity);
}

DispersionModel DispersionModel::linear(double a, double b_seconds, FrequencyRange validity) {
    return DispersionModel(Kind::LinearInOmega, {a, b_seconds}, validity);
}

DispersionModel DispersionModel::sellmeier(std::vector<double> coefficients,
                                           FrequencyRange validity) {
    return DispersionModel(Kind::Sellmeier, std::move(coefficients), validity);
}

DispersionModel::DispersionModel(Kind kind, std::vector<double> parameters,
                                 FrequencyRange validity)
    : kind_(kind), params_(std::move(parameters)), validity_(validity) {
    if (!(validity_.lo >= 0.0) || !(validity_.lo < validity_.hi)) {
        throw Error(ErrorKind::InvalidArgument, "validity range must satisfy 0 <= lo < hi");
    }
    for (double p : params_) {
        if (!std::isfinite(p)) {
            throw Error(ErrorKind::InvalidArgument, "dispersion parameters must be finite");
        }
    }
    switch (kind_) {
        case Kind::Constant:
            if (params_.size() != 1) {
                throw Error(ErrorKind::InvalidArgument, "Constant model takes 1 parameter");
            }
            if (!(params_[0] > 1.0)) {
                throw Error(ErrorKind::InvalidArgument, "refractive index must exceed 1");
            }
            return;
        case Kind::LinearInOmega: {
            if (params_.size() != 2) {
                throw Error(ErrorKind::InvalidArgument, "LinearInOmega model takes 2 parameters");
            }
            if (!std::isfinite(validity_.hi)) {
                throw Error(ErrorKind::InvalidArgument,
                            "LinearInOmega model needs a finite validity range");
            }
            // Linear, so the extremes sit at the interval ends.
            const double n_lo = params_[0] + params_[1] * validity_.lo;
            const double n_hi = params_[0] + params_[1] * validity_.hi;
            if (!(n_lo > 1.0) || !(n_hi > 1.0)) {
                throw Error(ErrorKind::InvalidArgument,
                            "refractive index must exceed 1 over the validity range");
            }
            return;
        }
        case Kind::Sellmeier: {
            if (params_.size() != 6) {
                throw Error(ErrorKind::InvalidArgument,
                            "Sellmeier model takes 6 parameters {B1,B2,B3,C1,C2,C3}");
            }
            if (!(validity_.lo > 0.0) || !std::isfinite(validity_.hi)) {
                throw Error(ErrorKind::InvalidArgument,
                            "Sellmeier model needs a finite, positive validity range");
            }
            const double l2_min = std::pow(wavelength_um(validity_.hi), 2);
            const double l2_max = std::pow(wavelength_um(validity_.lo), 2);
            for (int k = 0; k < 3; ++k) {
                const double c = params_[3 + k];
                if (c >= l2_min && c <= l2_max) {
                    throw Error(ErrorKind::InvalidArgument,
                                "Sellmeier pole inside the validity range");
                }
            }
            for (int i = 0; i < validity_samples; ++i) {
                const double omega = validity_.lo + (validity_.hi - validity_.lo) * i /
                                                        (validity_samples - 1);
                if (!(sellmeier_n2(wavelength_um(omega)) > 1.0)) {
                    throw Error(ErrorKind::InvalidArgument,
                                "refractive index must exceed 1 over the validity range");
                }
            }
            return;
        }
    }
}

void DispersionModel::check_in_range(double omega) const {
    if (!validity_.contains(omega)) throw Error(ErrorKind::OutOfRange, describe(omega, validity_));
}

double DispersionModel::sellmeier_n2(double lambda_um) const noexcept {
    const double l2 = lambda_um * lambda_um;
    double n2 = 1.0;
    for (int k = 0; k < 3; ++k) n2 += params_[k] * l2 / (l2 - params_[3 + k]);
    return n2;
}

double DispersionModel::index(double omega) const {
    check_in_range(omega);
    switch (kind_) {
        case Kind::Constant: return params_[0];
        case Kind::LinearInOmega: return params_[0] + params_[1] * omega;
        case Kind::Sellmeier: return std::sqrt(sellmeier_n2(wavelength_um(omega)));
    }
    return 0.0;
}

double DispersionModel::index_derivative(double omega) const {
    check_in_range(omega);
    switch (kind_) {
        case Kind::Constant: return 0.0;
        case Kind::LinearInOmega: return params_[1];
        case Kind::Sellmeier: {
            const double lambda = wavelength_um(omega);
            const double l2 = lambda * lambda;
            double dn2_dlambda = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double c = params_[3 + k];
                dn2_dlambda += -2.0 * params_[k] * lambda * c / ((l2 - c) * (l2 - c));
            }
            const double n = std::sqrt(sellmeier_n2(lambda));
            // dlambda/domega = -lambda/omega
            return dn2_dlambda / (2.0 * n) * (-lambda / omega);
        }
    }
    return 0.0;
}

FrequencyTriple FrequencyTriple::make(double omega_p, double omega_s, double omega_i) {
    if (!(omega_p > 0.0) || !(omega_s > 0.0) || !(omega_i > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "frequencies must be strictly positive");
    }
    if (omega_s + omega_i != omega_p) {
        throw Error(ErrorKind::InvalidArgument,
                    "energy conservation violated: omega_P != omega_S + omega_I");
    }
    return FrequencyTriple(omega_p, omega_s, omega_i);
}

namespace {

std::optional<double> exact_idler(double omega_p, double omega_s) {
    const double guess = omega_p - omega_s;
    double up = guess;
    double down = guess;
    for (int step = 0; step < 8; ++step) {
        if (omega_s + up == omega_p) return up;
        if (omega_s + down == omega_p) return down;
        up = std::nextafter(up, std::numeric_limits<double>::infinity());
        down = std::nextafter(down, 0.0);
    }
    return std::nullopt;
}

}  // namespace

FrequencyTriple FrequencyTriple::from_pump_and_signal(double omega_p, double omega_s) {
    if (!(omega_s > 0.0) || !(omega_s < omega_p)) {
        throw Error(ErrorKind::InvalidArgument, "need 0 < omega_S < omega_P");
    }
    if (auto idler = exact_idler(omega_p, omega_s)) return make(omega_p, omega_s, *idler);
    // Every candidate sum is a rounding tie that breaks away from omega_P;
    // moving the signal by one ulp clears the tie.
    for (double s : {std::nextafter(omega_s, 0.0), std::nextafter(omega_s, omega_p)}) {
        if (auto idler = exact_idler(omega_p, s)) return make(omega_p, s, *idler);
    }
    throw Error(ErrorKind::InvalidArgument,
                "no idler frequency makes omega_S + omega_I == omega_P exactly");
}

void CrystalParams::validate() const {
    if (!(length_l > 0.0)) throw Error(ErrorKind::InvalidArgument, "crystal length must be > 0");
    if (!(chi > 0.0)) throw Error(ErrorKind::InvalidArgument, "chi must be > 0");
    if (!(cross_section_A > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cross section must be > 0");
    }
}

double refractive_index(const DispersionModel& model, double omega) { return model.index(omega); }

double group_velocity(const DispersionModel& model, double omega) {
    const double group_index = model.index(omega) + omega * model.index_derivative(omega);
    return constants::speed_of_light / group_index;
}

double wave_number(const DispersionModel& model, double omega) {
    return omega * model.index(omega) / constants::speed_of_light;
}

double transit_time_diff(const CrystalParams& crystal, const FrequencyTriple& freqs) {
    const double vs = group_velocity(crystal.dispersion_signal, freqs.signal());
    const double vi = group_velocity(crystal.dispersion_idler, freqs.idler());
    return crystal.length_l / vi - crystal.length_l / vs;
}

double phase_mismatch(const CrystalParams& crystal, double omega_p, double omega_s) {
    return wave_number(crystal.dispersion_pump, omega_p) -
           wave_number(crystal.dispersion_signal, omega_s) -
           wave_number(crystal.dispersion_idler, omega_p - omega_s);
}

FrequencyTriple phase_match(const CrystalParams& crystal, double omega_p,
                            std::pair<double, double> bracket) {
    auto [lo, hi] = bracket;
    if (!(lo > 0.0) || !(lo < hi) || !(hi < omega_p)) {
        throw Error(ErrorKind::InvalidArgument, "bracket must satisfy 0 < lo < hi < omega_P");
    }
    const double tolerance = 1e-6 * wave_number(crystal.dispersion_pump, omega_p);
    auto mismatch = [&](double ws) { return phase_mismatch(crystal, omega_p, ws); };

    constexpr int scan = 257;
    bool all_small = true;
    for (int i = 0; i < scan && all_small; ++i) {
        const double ws = lo + (hi - lo) * i / (scan - 1);
        all_small = std::abs(mismatch(ws)) < tolerance;
    }
    if (all_small) {
        throw Error(ErrorKind::Degenerate,
                    "phase mismatch vanishes across the bracket; supply omega_S explicitly");
    }

    double f_lo = mismatch(lo);
    const double f_hi = mismatch(hi);
    if (f_lo == 0.0) return FrequencyTriple::from_pump_and_signal(omega_p, lo);
    if (f_hi == 0.0) return FrequencyTriple::from_pump_and_signal(omega_p, hi);
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw Error(ErrorKind::NoSignChange, "phase mismatch has no sign change on the bracket");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = mismatch(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return FrequencyTriple::from_pump_and_signal(omega_p, 0.5 * (lo + hi));
}

}  // namespace biphoton
