"""Bivariate polynomials f(ω, z), the algebraic curve of a band structure."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.polynomial import polynomial as P

from riemann_bands.errors import ModelInvalid
from riemann_bands.polyalg.univariate import ZERO_COEFF_TOL, UniPoly

logger = logging.getLogger(__name__)


class Plane(str, Enum):
    """Complex plane (equivalently, the variable) a computation lives on."""

    OMEGA = "omega"
    Z = "z"

    @property
    def other(self) -> Plane:
        return Plane.Z if self is Plane.OMEGA else Plane.OMEGA


@dataclass(frozen=True)
class BiPoly:
    """Polynomial ``f(ω, z) = Σ c[i, j] ω^i z^j``.

    Parameters
    ----------
    coeffs : np.ndarray
        Complex array of shape ``(r + 1, u + 1)``; row ``i`` is the power of
        ω, column ``j`` the power of z.
    z_shift : int
        Power of z the Laurent source was multiplied by to clear negative
        powers (``f = z**z_shift * det(H − ω)`` for lattice models).
    """

    coeffs: np.ndarray
    z_shift: int = field(default=0)

    @classmethod
    def from_coeffs(
        cls, coeffs, z_shift: int = 0, tol: float = ZERO_COEFF_TOL
    ) -> BiPoly:
        """Normalize and validate a coefficient array.

        Negligible entries are zeroed, empty top rows/columns are trimmed and
        empty low z columns are divided out (lowering ``z_shift``).

        Raises
        ------
        ModelInvalid
            If the result has ω-degree or z-degree below 1.
        """
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex)).copy()
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        if scale == 0.0:
            raise ModelInvalid("Bivariate polynomial is identically zero")
        c[np.abs(c) <= tol * scale] = 0

        rows = np.flatnonzero(np.any(c != 0, axis=1))
        cols = np.flatnonzero(np.any(c != 0, axis=0))
        low = int(cols[0])
        c = c[: rows[-1] + 1, low : cols[-1] + 1]
        if low:
            logger.debug("Cleared common factor z^%d", low)
        poly = cls(c, z_shift=z_shift - low)
        if poly.r < 1 or poly.u < 1:
            raise ModelInvalid(
                f"Curve needs ω-degree ≥ 1 and z-degree ≥ 1, got r={poly.r}, u={poly.u}"
            )
        return poly

    # ------------------------------------------------------------------ #
    # Degrees and distinguished coefficients
    # ------------------------------------------------------------------ #

    @property
    def r(self) -> int:
        """Degree in ω."""
        return self.coeffs.shape[0] - 1

    @property
    def u(self) -> int:
        """Degree in z."""
        return self.coeffs.shape[1] - 1

    def degree(self, var: Plane) -> int:
        return self.r if Plane(var) is Plane.OMEGA else self.u

    @property
    def D_r(self) -> UniPoly:
        """Coefficient of ω^r as a polynomial in z."""
        return UniPoly.from_coeffs(self.coeffs[-1, :], tol=0.0)

    def leading(self, var: Plane) -> UniPoly:
        """Leading coefficient in ``var`` as a polynomial in the other variable."""
        if Plane(var) is Plane.OMEGA:
            return self.D_r
        return UniPoly.from_coeffs(self.coeffs[:, -1], tol=0.0)

    def padded(self, r: int, u: int) -> np.ndarray:
        """Coefficient array zero-padded to shape ``(r + 1, u + 1)``."""
        if r < self.r or u < self.u:
            raise ValueError(f"Cannot pad ({self.r}, {self.u}) down to ({r}, {u})")
        out = np.zeros((r + 1, u + 1), dtype=complex)
        out[: self.r + 1, : self.u + 1] = self.coeffs
        return out

    # ------------------------------------------------------------------ #
    # Evaluation and restriction
    # ------------------------------------------------------------------ #

    def __call__(self, omega, z):
        return P.polyval2d(omega, z, self.coeffs)

    def fiber_poly(self, plane: Plane, x: complex) -> UniPoly:
        """Restrict to a point of ``plane``; the result is a polynomial in the other variable.

        ``plane=OMEGA`` fixes ω = x and returns a polynomial in z.
        """
        if Plane(plane) is Plane.OMEGA:
            coeffs = P.polyval(x, self.coeffs)
        else:
            coeffs = P.polyval(x, self.coeffs.T)
        return UniPoly.from_coeffs(coeffs, tol=0.0)

    def fiber_coeff_matrix(self, plane: Plane) -> np.ndarray:
        """Array whose row k is the coefficient of (fiber variable)^k, in the base variable."""
        return self.coeffs.T if Plane(plane) is Plane.OMEGA else self.coeffs

    # ------------------------------------------------------------------ #
    # Algebra
    # ------------------------------------------------------------------ #

    def derivative(self, var: Plane) -> BiPoly:
        """Partial derivative; the result is not re-normalized."""
        axis = 0 if Plane(var) is Plane.OMEGA else 1
        return BiPoly(P.polyder(self.coeffs, axis=axis), z_shift=self.z_shift)

    def scale_z(self, lam: complex) -> BiPoly:
        """``f(ω, λ z)`` without renormalization."""
        powers = lam ** np.arange(self.u + 1)
        return BiPoly(self.coeffs * powers[None, :], z_shift=self.z_shift)

    def transpose(self) -> BiPoly:
        """Swap the roles of ω and z."""
        return BiPoly(self.coeffs.T.copy())

    def allclose(self, other: BiPoly, rtol: float = 1e-10) -> bool:
        r, u = max(self.r, other.r), max(self.u, other.u)
        a, b = self.padded(r, u), other.padded(r, u)
        scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        return bool(np.max(np.abs(a - b)) <= rtol * scale)
