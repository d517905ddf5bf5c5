"""Inverse design of two-band curves: branch polynomial, multistart solve, deformation, realization."""

from riemann_bands.design.coefficients import (
    NAMES,
    DEFAULT_ANCHOR,
    TwoBandCoefficients,
    branch_coefficients,
    branch_polynomial,
)
from riemann_bands.design.realize import realize_two_band, round_trip_error
from riemann_bands.design.solver import (
    DesignTarget,
    RestartDiagnostic,
    branch_locations,
    deform_along_paths,
    exchange_paths,
    match_distance,
    solve_coefficients,
    symmetric_masks,
    symmetry_images,
)

__all__ = [
    "NAMES",
    "DEFAULT_ANCHOR",
    "DesignTarget",
    "RestartDiagnostic",
    "TwoBandCoefficients",
    "branch_coefficients",
    "branch_locations",
    "branch_polynomial",
    "deform_along_paths",
    "exchange_paths",
    "match_distance",
    "realize_two_band",
    "round_trip_error",
    "solve_coefficients",
    "symmetric_masks",
    "symmetry_images",
]
