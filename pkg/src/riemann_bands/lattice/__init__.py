"""Tight-binding models: Bloch Hamiltonians, characteristic curves, finite chains."""

from riemann_bands.lattice.chain import chain_matrix, finite_chain_spectrum
from riemann_bands.lattice.hamiltonian import (
    BlochHamiltonian,
    TwoBandNN,
    char_poly,
    gauge_transform,
)

__all__ = [
    "BlochHamiltonian",
    "TwoBandNN",
    "chain_matrix",
    "char_poly",
    "finite_chain_spectrum",
    "gauge_transform",
]
