"""Quasistatic antiplane shear speed of 2D periodic composites."""

from ._shearhom import (  # noqa: F401
    ConfigError,
    DivergenceError,
    Error,
    InvalidGeometry,
    InvalidRegime,
    InvalidResult,
    Lattice,
    Material,
    Phase,
    annulus,
    circle,
    dense_speed,
    effective_speed,
    estimate,
    fft_available,
    keller_residual,
    layer,
    matrix,
    mm_speeds,
    mst_speed,
    psi_hat,
    pwe_bounds,
    pwe_speed,
    square,
    square45,
    sweep,
    theta,
)

__version__ = "0.1.0"
