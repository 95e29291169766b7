#pragma once

#include "biphoton/cavity.hpp"
#include "biphoton/trace.hpp"

#include <string_view>

namespace biphoton {

enum class Field { Signal, Idler };

std::string_view field_name(Field f) noexcept;
Field parse_field(std::string_view name);

// Pass as max_mode to let the routine choose the mode range.
inline constexpr long long auto_modes = -1;

/// ceil(2 pi / (fsr |tau0|)), the mode index of the first sinc^2 envelope zero.
/// Throws DegenerateGroupVelocity when tau0 == 0.
long long envelope_modes(const DerivedScales& scales);

/// Detuning grid covering modes [-(N + 1/2), N + 1/2] fsr with N =
/// envelope_modes, sampled at `points_per_gamma` points per gamma.
AxisSpec default_spectrum_grid(const DerivedScales& scales, int points_per_gamma = 16);

/// Output spectrum against detuning delta = omega - omega_{S/I}:
///     S(delta) ~ sum_m sinc^2(m fsr tau0 / 2) / ((gamma/2)^2 + (delta + m fsr)^2)
/// so mode m sits at delta = -m fsr. Signal and idler share the comb shape;
/// the field only selects the centre frequency recorded in the metadata.
/// Throws GridTooCoarse when the grid spacing exceeds gamma / 16.
Trace spectrum(Field field, const DerivedScales& scales, const FrequencyTriple& freqs,
               const AxisSpec& detuning_grid, long long max_mode = auto_modes,
               Normalization normalization = Normalization::PeakUnity);

/// First-order correlation normalised to G1(0) = 1,
///     G1(tau) = sum_m w_m exp(-gamma |tau| / 2) exp(-i (omega_c - m fsr) tau) / sum_m w_m
/// with w_m = sinc^2(m fsr tau0 / 2). By default the optical carrier
/// exp(-i omega_c tau) is left out, which makes the result real.
/// Throws GridTooCoarse when the tau spacing undersamples the outermost mode.
ComplexTrace g1(Field field, const DerivedScales& scales, const FrequencyTriple& freqs,
                const AxisSpec& tau_grid, long long max_mode = auto_modes,
                bool include_carrier = false);

}  // namespace biphoton
