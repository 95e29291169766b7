#include "biphoton/correlations.hpp"

#include "biphoton/biphoton.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/summation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace biphoton {
namespace {

void check_peak_grid(const G2Request& request, const DerivedScales& scales) {
    request.tau_grid.validate();
    if (scales.tau0 == 0.0) {
        throw Error(ErrorKind::DegenerateGroupVelocity,
                    "G2 peaks have zero width for tau0 == 0; use the averaged tier");
    }
    if (request.tau_grid.spacing() > std::abs(scales.tau0) / 8.0) {
        throw Error(ErrorKind::GridTooCoarse, "tau spacing must not exceed |tau0| / 8");
    }
}

long long resolve_modes(const G2Request& request, const DerivedScales& scales) {
    return request.max_mode >= 0 ? request.max_mode : default_g2_modes(scales);
}

Trace finish(std::vector<double> axis, std::vector<double> values, G2Tier tier) {
    Trace t;
    t.axis = std::move(axis);
    t.values = std::move(values);
    t.meta.kind = TraceKind::G2;
    t.meta.tier = std::string(tier_name(tier));
    t.normalize(Normalization::PeakUnity);
    return t;
}

// sum_{m=-M}^{M} exp(-i m x), periodic in x with period 2 pi.
double dirichlet(long long max_mode, double x) noexcept {
    const double r = std::remainder(x, constants::two_pi);
    const double den = std::sin(0.5 * r);
    if (den == 0.0) return static_cast<double>(2 * max_mode + 1);
    return std::sin((static_cast<double>(max_mode) + 0.5) * r) / den;
}

}  // namespace

std::string_view tier_name(G2Tier tier) noexcept {
    switch (tier) {
        case G2Tier::Exact: return "exact";
        case G2Tier::Series: return "series";
        case G2Tier::Compact: return "compact";
        case G2Tier::Averaged: return "averaged";
    }
    return "unknown";
}

G2Tier parse_tier(std::string_view name) {
    if (name == "exact") return G2Tier::Exact;
    if (name == "series") return G2Tier::Series;
    if (name == "compact") return G2Tier::Compact;
    if (name == "averaged") return G2Tier::Averaged;
    throw Error(ErrorKind::InvalidArgument, "unknown tier '" + std::string(name) +
                                                "' (expected exact, series, compact or averaged)");
}

double lorentzian_kernel(double t, double gamma) noexcept {
    if (t < 0.0) return 0.0;
    if (t == 0.0) return 1.0;
    return 2.0 * std::exp(-0.5 * gamma * t);
}

long long default_g2_modes(const DerivedScales& scales) {
    const double step = 0.5 * scales.fsr_delta_omega * std::abs(scales.tau0);
    return static_cast<long long>(std::ceil(16.0 * constants::pi / step));
}

Trace g2_exact(const G2Request& request, const DerivedScales& scales) {
    check_peak_grid(request, scales);
    const long long modes = resolve_modes(request, scales);
    const double fsr = scales.fsr_delta_omega;
    const double tau0 = scales.tau0;
    const double gamma = scales.gamma;

    // Phase swept by the Dirichlet kernel across the crystal, per unit u.
    const double sweep = (static_cast<double>(modes) + 0.5) * fsr * std::abs(tau0);
    double panels_per_unit = 0.0;
    if (request.quad_points > 0) {
        if (request.quad_points < 32) {
            throw Error(ErrorKind::InvalidArgument, "exact tier needs at least 32 quadrature points");
        }
        panels_per_unit = std::ceil(static_cast<double>(request.quad_points) / gauss_order);
        if (sweep / panels_per_unit > constants::pi / 4.0) {
            throw Error(ErrorKind::QuadratureWarning,
                        "phase advance per panel exceeds pi/4; raise quad_points");
        }
    } else {
        panels_per_unit = std::max(4.0, std::ceil(sweep / (constants::pi / 8.0)));
    }

    auto integrand = [&](double tau, double u) {
        const double t = tau - u * tau0;
        return lorentzian_kernel(t, gamma) * dirichlet(modes, fsr * t);
    };
    auto integrate = [&](double tau, double a, double b) {
        const auto panels =
            static_cast<std::size_t>(std::max(1.0, std::ceil(panels_per_unit * (b - a))));
        return composite_gauss([&](double u) { return integrand(tau, u); }, a, b, panels);
    };

    auto axis = request.tau_grid.values();
    std::vector<double> values(axis.size(), 0.0);
    for (std::size_t k = 0; k < axis.size(); ++k) {
        const double tau = axis[k];
        if (tau + std::max(tau0, 0.0) < 0.0) continue;  // kernel argument negative for every u
        // The kernel jumps where tau - u tau0 = 0; keep that point on a panel edge.
        const double split = tau / tau0;
        double integral = 0.0;
        if (split > -1.0 && split < 0.0) {
            integral = integrate(tau, -1.0, split) + integrate(tau, split, 0.0);
        } else {
            integral = integrate(tau, -1.0, 0.0);
        }
        const double amplitude = -constants::pi * integral;
        values[k] = amplitude * amplitude;
    }
    return finish(std::move(axis), std::move(values), G2Tier::Exact);
}

Trace g2_series(const G2Request& request, const DerivedScales& scales) {
    check_peak_grid(request, scales);
    const long long modes = resolve_modes(request, scales);
    const double fsr = scales.fsr_delta_omega;
    const double tau0 = scales.tau0;
    const double step = 0.5 * fsr * tau0;

    std::vector<double> weights(static_cast<std::size_t>(modes) + 1);
    for (long long m = 1; m <= modes; ++m) {
        weights[static_cast<std::size_t>(m)] = 2.0 * sinc(static_cast<double>(m) * step);
    }

    auto axis = request.tau_grid.values();
    std::vector<double> values(axis.size(), 0.0);
    for (std::size_t k = 0; k < axis.size(); ++k) {
        const double tau = axis[k];
        if (tau + 0.5 * tau0 < -0.5 * std::abs(tau0)) continue;
        // The m and -m terms pair into a cosine, so the sum is real.
        const double theta = std::remainder(fsr * (tau + 0.5 * tau0), constants::two_pi);
        CompensatedSum s(1.0);
        for (long long m = 1; m <= modes; ++m) {
            s.add(weights[static_cast<std::size_t>(m)] * std::cos(static_cast<double>(m) * theta));
        }
        const double a = s.value();
        values[k] = std::exp(-scales.gamma * tau) * a * a;
    }
    return finish(std::move(axis), std::move(values), G2Tier::Series);
}

Trace g2_compact(const G2Request& request, const DerivedScales& scales) {
    check_peak_grid(request, scales);
    const double period = scales.round_trip_T;
    const double tau0 = scales.tau0;
    const double half = 0.5 * std::abs(tau0);

    auto axis = request.tau_grid.values();
    std::vector<double> values(axis.size(), 0.0);
    for (std::size_t k = 0; k < axis.size(); ++k) {
        const double tau = axis[k];
        const double center = tau + 0.5 * tau0;  // equals j T on a boxcar centre
        const auto j_lo = static_cast<long long>(std::floor((center - half) / period)) - 1;
        const auto j_hi = static_cast<long long>(std::ceil((center + half) / period)) + 1;
        CompensatedSum s;
        for (long long j = std::max(0LL, j_lo); j <= j_hi; ++j) {
            const double jt = static_cast<double>(j) * period;
            if (std::abs(tau - jt + 0.5 * tau0) <= half) {
                s.add(std::exp(-scales.gamma * jt));
            }
        }
        values[k] = s.value();
    }
    return finish(std::move(axis), std::move(values), G2Tier::Compact);
}

Trace g2_averaged(const G2Request& request, const DerivedScales& scales) {
    request.tau_grid.validate();
    const double dT = request.resolution_dT;
    if (!(dT > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "averaged tier needs a positive resolution dT");
    }
    if (dT < 10.0 * std::abs(scales.tau0)) {
        throw Error(ErrorKind::ResolutionTooFine, "averaging needs dT >= 10 |tau0|");
    }
    if (request.tau_grid.spacing() > dT / 8.0) {
        throw Error(ErrorKind::GridTooCoarse, "tau spacing must not exceed dT / 8");
    }
    const double period = scales.round_trip_T;
    const double decay = scales.gamma * period;
    const long long j_max =
        request.j_max > 0 ? request.j_max
                          : static_cast<long long>(std::floor(std::log(1e6) / decay)) + 1;
    const double forbidden_below = std::min(0.0, -scales.tau0);

    auto axis = request.tau_grid.values();
    std::vector<double> values(axis.size(), 0.0);
    for (std::size_t k = 0; k < axis.size(); ++k) {
        const double tau = axis[k];
        if (request.mask_forbidden_region && tau < forbidden_below) continue;
        CompensatedSum s;
        for (long long j = 0; j <= j_max; ++j) {
            const double jt = static_cast<double>(j) * period;
            const double offset = (jt - tau) / dT;
            s.add(std::exp(-decay * static_cast<double>(j) - 4.0 * offset * offset));
        }
        values[k] = s.value();
    }
    return finish(std::move(axis), std::move(values), G2Tier::Averaged);
}

Trace g2(const G2Request& request, const DerivedScales& scales) {
    switch (request.tier) {
        case G2Tier::Exact: return g2_exact(request, scales);
        case G2Tier::Series: return g2_series(request, scales);
        case G2Tier::Compact: return g2_compact(request, scales);
        case G2Tier::Averaged: return g2_averaged(request, scales);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown G2 tier");
}

}  // namespace biphoton
