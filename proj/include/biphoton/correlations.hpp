#pragma once

#include "biphoton/cavity.hpp"
#include "biphoton/trace.hpp"

#include <string_view>

namespace biphoton {

enum class G2Tier { Exact, Series, Compact, Averaged };

std::string_view tier_name(G2Tier tier) noexcept;
G2Tier parse_tier(std::string_view name);

struct G2Request {
    G2Tier tier = G2Tier::Series;
    AxisSpec tau_grid;
    long long max_mode = -1;     // Exact/Series; negative picks 16 envelope lobes
    int quad_points = 0;         // Exact; 0 picks enough panels for pi/8 per panel
    double resolution_dT = 0.0;  // Averaged
    long long j_max = 0;         // Averaged; 0 keeps peaks down to 1e-6
    // Averaged only: zero the trace where the unaveraged function vanishes,
    // tau < min(0, -tau0). The other tiers vanish there on their own.
    bool mask_forbidden_region = true;
};

/// -(1/pi) int dOmega exp(-i Omega t) / (gamma/2 - i Omega) in the three-branch
/// form: 0 for t < 0, 1 at t = 0, 2 exp(-gamma t / 2) for t > 0.
double lorentzian_kernel(double t, double gamma) noexcept;

/// Default mode cut-off for the Exact and Series tiers: 16 lobes of the
/// sinc envelope, ceil(16 pi / (fsr |tau0| / 2)).
long long default_g2_modes(const DerivedScales& scales);

/// Amplitude A(tau) = -pi sum_m exp(-i m fsr tau) int_{-1}^{0} du
///     exp(i m fsr tau0 u) K(tau - u tau0)
/// with the mode sum done in closed form (Dirichlet kernel) and the u
/// integral by composite Gauss-Legendre, split where the kernel argument
/// crosses zero. Returns |A|^2 normalised to peak one.
Trace g2_exact(const G2Request& request, const DerivedScales& scales);

/// exp(-gamma tau) |sum_m sinc(m fsr tau0 / 2) exp(-i m fsr (tau + tau0/2))|^2
/// for tau + tau0/2 >= -|tau0|/2, zero elsewhere; compensated sum over m.
Trace g2_series(const G2Request& request, const DerivedScales& scales);

/// Boxcar train: exp(-gamma j T) where |tau - j T + tau0/2| <= |tau0|/2 for
/// some j >= 0 (closed intervals), zero elsewhere.
Trace g2_compact(const G2Request& request, const DerivedScales& scales);

/// Detector-averaged comb sum_{j=0}^{j_max} exp(-gamma j T - 4 (j T - tau)^2 / dT^2).
/// Throws ResolutionTooFine when dT < 10 |tau0|.
Trace g2_averaged(const G2Request& request, const DerivedScales& scales);

Trace g2(const G2Request& request, const DerivedScales& scales);

}  // namespace biphoton
