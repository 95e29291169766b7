#include "biphoton/biphoton.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/summation.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>

namespace biphoton {

void PumpParams::validate() const {
    if (!(field_amplitude_EP > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "pump field amplitude must be > 0");
    }
}

std::complex<double> phi_exact(long long m, double detuning, const DerivedScales& scales,
                               int quad_points) {
    if (quad_points < 32) {
        throw Error(ErrorKind::InvalidArgument, "phi_exact needs at least 32 quadrature points");
    }
    const double rate = (static_cast<double>(m) * scales.fsr_delta_omega + detuning) * scales.tau0;
    const auto panels = static_cast<std::size_t>((quad_points + gauss_order - 1) / gauss_order);
    if (std::abs(rate) / static_cast<double>(panels) > constants::pi / 4.0) {
        throw Error(ErrorKind::QuadratureWarning,
                    "phase advance per panel exceeds pi/4; raise quad_points");
    }
    auto integrand = [rate](double u) { return std::polar(1.0, rate * u); };
    return composite_gauss(integrand, -1.0, 0.0, panels);
}

std::complex<double> phi_analytic(long long m, double detuning, const DerivedScales& scales) {
    const double z =
        0.5 * (static_cast<double>(m) * scales.fsr_delta_omega + detuning) * scales.tau0;
    return sinc(z) * std::polar(1.0, -z);
}

double rate_prefactor(const CrystalParams& crystal, const PumpParams& pump,
                      const FrequencyTriple& freqs) {
    const double coupling = crystal.chi * pump.field_amplitude_EP /
                            (4.0 * constants::vacuum_permittivity * constants::speed_of_light *
                             crystal.cross_section_A);
    const double n_s = crystal.dispersion_signal.index(freqs.signal());
    const double n_i = crystal.dispersion_idler.index(freqs.idler());
    return coupling * coupling * freqs.signal() * freqs.idler() / (n_s * n_i);
}

Sinc2SumResult sinc2_mode_sum(double step, long long initial_modes, double rel_tol) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidArgument, "sinc^2 mode sum needs a positive step");
    }
    constexpr long long max_modes = 1LL << 34;
    const double first_zero = std::ceil(constants::pi / step);
    long long target = std::max<long long>({initial_modes, 16,
                                            static_cast<long long>(std::min(first_zero, 1e15))});
    const double inv_step2 = 1.0 / (step * step);
    const double sin_step = std::abs(std::sin(step));

    CompensatedSum partial(1.0);
    long long done = 0;
    while (true) {
        if (target > max_modes) {
            throw Error(ErrorKind::NonConvergence, "sinc^2 mode sum did not converge");
        }
        for (long long m = done + 1; m <= target; ++m) {
            const double s = sinc(static_cast<double>(m) * step);
            partial.add(2.0 * s * s);
        }
        done = target;

        const double next = static_cast<double>(done + 1);
        const double smooth_tail = inv_step2 * boost::math::trigamma(next);
        double oscillating = inv_step2 * boost::math::trigamma(next);
        if (sin_step > 0.0) {
            oscillating = std::min(oscillating, inv_step2 / (next * next * sin_step));
        }
        const double value = partial.value() + smooth_tail;
        if (oscillating <= rel_tol * value) return {value, done, oscillating};
        target = 2 * done;
    }
}

double rate_mode_sum(const CrystalParams& crystal, const PumpParams& pump,
                     const FrequencyTriple& freqs, const DerivedScales& scales,
                     long long initial_modes) {
    if (scales.tau0 == 0.0) {
        throw Error(ErrorKind::NonConvergence,
                    "mode sum diverges for tau0 == 0; check the parameter regime");
    }
    const double step = 0.5 * scales.fsr_delta_omega * std::abs(scales.tau0);
    const auto sum = sinc2_mode_sum(step, initial_modes);
    return rate_prefactor(crystal, pump, freqs) * scales.fsr_delta_omega * sum.value;
}

double rate_continuum(const CrystalParams& crystal, const PumpParams& pump,
                      const FrequencyTriple& freqs, const DerivedScales& scales) {
    if (scales.tau0 == 0.0) {
        throw Error(ErrorKind::DegenerateGroupVelocity,
                    "signal and idler group velocities coincide (tau0 == 0)");
    }
    return rate_prefactor(crystal, pump, freqs) * constants::two_pi / std::abs(scales.tau0);
}

double BiphotonAmplitudeGrid::norm() const {
    const std::size_t n = detuning.size();
    if (n < 2) return 0.0;
    const double h = detuning[1] - detuning[0];
    CompensatedSum total;
    for (std::size_t row = 0; row < mode_count(); ++row) {
        CompensatedSum line;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
            line.add(w * std::norm(amplitudes[row * n + k]));
        }
        total.add(h * line.value());
    }
    return total.value();
}

BiphotonAmplitudeGrid wavefunction_grid(const DerivedScales& scales, long long max_mode,
                                        double halfwidth_gammas, int points_per_mode) {
    if (max_mode < 1) throw Error(ErrorKind::InvalidArgument, "need at least one mode each side");
    if (!(halfwidth_gammas >= 10.0)) {
        throw Error(ErrorKind::InvalidArgument, "detuning half-width must be at least 10 gamma");
    }
    if (points_per_mode < 2) throw Error(ErrorKind::GridTooCoarse, "need at least 2 points");
    const double gamma = scales.gamma;
    const double halfwidth = halfwidth_gammas * gamma;
    const double spacing = 2.0 * halfwidth / (points_per_mode - 1);
    if (spacing > gamma / 16.0) {
        throw Error(ErrorKind::GridTooCoarse, "fewer than 16 grid points per gamma");
    }

    BiphotonAmplitudeGrid grid;
    grid.max_mode = max_mode;
    grid.detuning.resize(static_cast<std::size_t>(points_per_mode));
    for (int k = 0; k < points_per_mode; ++k) {
        grid.detuning[static_cast<std::size_t>(k)] = -halfwidth + spacing * k;
    }
    grid.amplitudes.resize(grid.mode_count() * grid.detuning.size());
    std::size_t idx = 0;
    for (long long m = -max_mode; m <= max_mode; ++m) {
        for (double omega : grid.detuning) {
            grid.amplitudes[idx++] =
                phi_analytic(m, omega, scales) / std::complex<double>(0.5 * gamma, -omega);
        }
    }
    const double raw = grid.norm();
    grid.normalization = 1.0 / std::sqrt(raw);
    for (auto& a : grid.amplitudes) a *= grid.normalization;
    return grid;
}

}  // namespace biphoton
