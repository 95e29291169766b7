#pragma once

#include "biphoton/correlations.hpp"
#include "biphoton/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace biphoton {

// Exit codes of run_cli.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_numeric = 2;
inline constexpr int exit_regime = 3;

/// tau window [-T/2, periods T] sampled at |tau0| / points_per_tau0, or at
/// dT / points_per_tau0 for the averaged tier.
AxisSpec g2_tau_grid(const Scenario& s, G2Tier tier, double resolution_dT);

/// Symmetric window of +-window_gammas / gamma, fine enough for `max_mode`.
AxisSpec g1_tau_grid(const Scenario& s, long long max_mode);

/// Entry point of the biphoton-opo tool. `args` excludes the program name.
/// Writes the summary line to `out` and any "error: code=N kind=K message=..."
/// line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biphoton
