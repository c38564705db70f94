"""Finite-volume reconstruction and quadrature benchmark."""

from ._core import (
    ConfigError,
    GasModel,
    PrimitiveState,
    StateError,
    exact_riemann_solve,
    exact_riemann_star,
    hllc_flux,
    ppm_face_values,
    read_snapshot,
    resolved_config,
    run_command,
    sound_speed,
    weno_face_values,
)

__all__ = [
    "ConfigError",
    "GasModel",
    "PrimitiveState",
    "StateError",
    "exact_riemann_solve",
    "exact_riemann_star",
    "hllc_flux",
    "ppm_face_values",
    "read_snapshot",
    "resolved_config",
    "run_command",
    "sound_speed",
    "weno_face_values",
]
