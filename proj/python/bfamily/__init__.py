"""Two-component b-family solvers on a periodic interval."""

from ._core import (
    Error,
    ProbeReport,
    compose,
    conjugated_derivative,
    dealias,
    derivative,
    directional_derivative_psi,
    grid,
    helmholtz_inverse,
    invert,
    preset,
    preset_names,
    psi,
    run_probe,
    sobolev_norm,
    solve_euler,
    solve_lagrangian,
)

__version__ = "0.1.0"

__all__ = [
    "Error",
    "ProbeReport",
    "compose",
    "conjugated_derivative",
    "dealias",
    "derivative",
    "directional_derivative_psi",
    "grid",
    "helmholtz_inverse",
    "invert",
    "preset",
    "preset_names",
    "psi",
    "run_probe",
    "sobolev_norm",
    "solve_euler",
    "solve_lagrangian",
]
