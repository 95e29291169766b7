"""Biphoton generation in a single-resonant OPO far below threshold."""

from ._core import (
    BiphotonError,
    Scenario,
    lorentzian_kernel,
    phi_analytic,
    phi_exact,
    run_cli,
    sinc2_mode_sum,
)

__all__ = [
    "BiphotonError",
    "Scenario",
    "lorentzian_kernel",
    "phi_analytic",
    "phi_exact",
    "run_cli",
    "sinc2_mode_sum",
]
