"""Shared pytest fixtures for riemann_bands tests."""

from __future__ import annotations

from dotenv import load_dotenv

load_dotenv()  # Load .env so RIEMANN_BANDS_* overrides apply to settings tests

import numpy as np
import pytest

from riemann_bands.design import TwoBandCoefficients
from riemann_bands.lattice import BlochHamiltonian
from riemann_bands.polyalg import BiPoly
from riemann_bands.registry import ModelRegistry

ROOTS_OF_UNITY = np.exp(2j * np.pi * np.arange(1, 7) / 6)

C2 = 2 ** (-1 / 3)


@pytest.fixture
def registry() -> ModelRegistry:
    return ModelRegistry()


@pytest.fixture
def hexagon_coeffs() -> TwoBandCoefficients:
    """Coefficient set whose branch points are the sixth roots of unity."""
    return TwoBandCoefficients(A0=-C2, A2=C2, B1=-(4 ** (-1 / 3)), B3=1 / (3 * 4 ** (1 / 3)))


@pytest.fixture
def bent_coeffs() -> TwoBandCoefficients:
    """Second roots-of-unity set."""
    c18 = np.cos(np.pi / 18)
    return TwoBandCoefficients(
        A0=-(4 ** (1 / 3) / np.sqrt(3)) * c18,
        A2=C2,
        B1=-(2 ** (1 / 3)) * np.cos(np.pi / 9),
        B3=-(2 ** (1 / 3) / (3 * np.sqrt(3))) * c18,
    )


@pytest.fixture
def hexagon_curve(hexagon_coeffs) -> BiPoly:
    return hexagon_coeffs.to_bipoly()


@pytest.fixture
def ssh() -> BlochHamiltonian:
    return BlochHamiltonian.ssh(2.0, 1.0)


@pytest.fixture
def three_band_curve() -> BiPoly:
    """``z²ω³ − (2z⁴ − 1)ω + (z⁴ + 1)``."""
    coeffs = np.zeros((4, 5), dtype=complex)
    coeffs[0, [0, 4]] = [1, 1]
    coeffs[1, [0, 4]] = [1, -2]
    coeffs[3, 2] = 1
    return BiPoly.from_coeffs(coeffs, z_shift=2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)
