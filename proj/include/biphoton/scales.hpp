#pragma once

#include "biphoton/biphoton.hpp"
#include "biphoton/cavity.hpp"
#include "biphoton/dispersion.hpp"

namespace biphoton {

/// Computes tau0, T, fsr, kappa (continuum form) and the regime report for a
/// physical parameter set. kappa is +inf when tau0 == 0.
DerivedScales derive_scales(const CrystalParams& crystal, const CavityParams& cavity,
                            const PumpParams& pump, const FrequencyTriple& freqs,
                            double regime_threshold = default_regime_threshold);

}  // namespace biphoton
