#include "biphoton/scales.hpp"

#include <limits>

namespace biphoton {

DerivedScales derive_scales(const CrystalParams& crystal, const CavityParams& cavity,
                            const PumpParams& pump, const FrequencyTriple& freqs,
                            double regime_threshold) {
    crystal.validate();
    cavity.validate();
    pump.validate();

    DerivedScales s;
    s.tau0 = transit_time_diff(crystal, freqs);
    s.round_trip_T = round_trip_time(crystal, cavity, freqs);
    s.fsr_delta_omega = free_spectral_range(s.round_trip_T);
    s.gamma = cavity.loss_rate_gamma;
    s.kappa = s.tau0 == 0.0 ? std::numeric_limits<double>::infinity()
                            : rate_continuum(crystal, pump, freqs, s);
    s.mode_number_m0 = central_mode_number(crystal, freqs);
    s.regime = check_regime(s, regime_threshold);
    return s;
}

}  // namespace biphoton
