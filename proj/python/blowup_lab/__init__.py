"""Python bindings for the blow-up laboratory."""

from ._core import (
    Error,
    Exponents,
    InvalidParameter,
    Run,
    __version__,
    constant_state_residual,
    gauss_jacobi,
    kappa,
    make_exponents,
    ode_blowup,
    simulate,
    unit_ball_volume,
)

__all__ = [
    "Error",
    "Exponents",
    "InvalidParameter",
    "Run",
    "__version__",
    "constant_state_residual",
    "gauss_jacobi",
    "kappa",
    "make_exponents",
    "ode_blowup",
    "simulate",
    "unit_ball_volume",
]
