"""Parameter estimation for Landau-Zener sweeps and interferometry."""

from ._core import (
    RunConfig,
    cfi_closed_form,
    eta1,
    log_gamma_complex,
    lz_probabilities,
    max_qfi_periodic,
    qfi_controlled,
    qfi_controlled_omega,
    qfi_delta_improved,
    qfi_leading,
    rwa_max_qfi,
    run,
    theta1,
)

__all__ = [
    "RunConfig",
    "cfi_closed_form",
    "eta1",
    "log_gamma_complex",
    "lz_probabilities",
    "max_qfi_periodic",
    "qfi_controlled",
    "qfi_controlled_omega",
    "qfi_delta_improved",
    "qfi_leading",
    "rwa_max_qfi",
    "run",
    "theta1",
]
