#pragma once

#include "biphoton/cavity.hpp"
#include "biphoton/dispersion.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace biphoton {

struct PumpParams {
    double field_amplitude_EP;  // V/m

    void validate() const;
};

/// sin(z)/z with sinc(0) = 1.
inline double sinc(double z) noexcept {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

/// Phase-matching function Phi_m(Omega) by composite Gauss-Legendre
/// quadrature of the crystal-length integral
///     int_{-1}^{0} du exp(i (m fsr + Omega) tau0 u).
/// `quad_points` (>= 32) is split into 8-point panels. Throws
/// QuadratureWarning when a panel spans more than pi/4 of phase.
std::complex<double> phi_exact(long long m, double detuning, const DerivedScales& scales,
                               int quad_points);

/// Closed form sinc(z) exp(-i z), z = (m fsr + Omega) tau0 / 2.
std::complex<double> phi_analytic(long long m, double detuning, const DerivedScales& scales);

/// (chi |E_P| / (4 eps0 c A))^2 * omega_S omega_I / (n_S n_I), in 1/s^2 * s.
double rate_prefactor(const CrystalParams& crystal, const PumpParams& pump,
                      const FrequencyTriple& freqs);

struct Sinc2SumResult {
    double value = 0.0;       // sum over all m of sinc^2(m step)
    long long modes = 0;      // explicit terms kept on each side
    double error_bound = 0.0;  // bound on |value - exact|
};

/// sum_{m=-inf}^{inf} sinc^2(m step) for step > 0.
///
/// Terms |m| <= M are summed explicitly in a fixed order. The remainder is
/// split as sin^2 = (1 - cos)/2: the smooth half is added in closed form via
/// the trigamma function, the oscillating half is bounded by Abel summation.
/// M starts at `initial_modes` and doubles until the bound drops below
/// `rel_tol` of the total.
Sinc2SumResult sinc2_mode_sum(double step, long long initial_modes, double rel_tol = 1e-6);

/// Biphoton rate from the sum over cavity modes. Throws NonConvergence for
/// tau0 == 0, where the sum diverges.
double rate_mode_sum(const CrystalParams& crystal, const PumpParams& pump,
                     const FrequencyTriple& freqs, const DerivedScales& scales,
                     long long initial_modes = 0);

/// Continuum limit prefactor * 2 pi / |tau0|. Reads only tau0 from `scales`.
/// Throws DegenerateGroupVelocity for tau0 == 0.
double rate_continuum(const CrystalParams& crystal, const PumpParams& pump,
                      const FrequencyTriple& freqs, const DerivedScales& scales);

/// psi(m, Omega) = N Phi_m(Omega) / (gamma/2 - i Omega) for m in [-M, M]
/// on a uniform detuning grid, with N chosen so the trapezoidal norm over the
/// stored grid is one.
struct BiphotonAmplitudeGrid {
    long long max_mode = 0;
    std::vector<double> detuning;  // rad/s
    std::vector<std::complex<double>> amplitudes;  // row-major, (2M+1) x detuning.size()
    double normalization = 0.0;

    std::size_t mode_count() const noexcept { return static_cast<std::size_t>(2 * max_mode + 1); }
    std::complex<double> at(long long m, std::size_t k) const {
        return amplitudes[static_cast<std::size_t>(m + max_mode) * detuning.size() + k];
    }
    /// sum_m trapz |psi|^2
    double norm() const;
};

BiphotonAmplitudeGrid wavefunction_grid(const DerivedScales& scales, long long max_mode,
                                        double halfwidth_gammas, int points_per_mode);

}  // namespace biphoton
