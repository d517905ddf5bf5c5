"""Two-band curve ``zω² + ω Σ A_s z^s + Σ B_s z^s`` and its branch polynomial."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, fields

import numpy as np
from numpy.polynomial import polynomial as P

from riemann_bands.errors import DegenerateCubic, ModelInvalid, ZeroLambda
from riemann_bands.polyalg import BiPoly, UniPoly

logger = logging.getLogger(__name__)

NAMES = ("A0", "A1", "A2", "B0", "B1", "B2", "B3")

# (name, power of λ under the gauge z → λz); A1 and B1 are gauge invariant
GAUGE_ANCHORS = (("A2", 1), ("B2", 1), ("A0", -1), ("B0", -1), ("B3", 2))
DEFAULT_ANCHOR = 2 ** (-1 / 3)


@dataclass(frozen=True)
class TwoBandCoefficients:
    """Coefficients of ``zω² + ω(A₀ + A₁z + A₂z²) + (B₀ + B₁z + B₂z² + B₃z³)``."""

    A0: complex = 0j
    A1: complex = 0j
    A2: complex = 0j
    B0: complex = 0j
    B1: complex = 0j
    B2: complex = 0j
    B3: complex = 0j

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, complex(getattr(self, f.name)))

    # ------------------------------------------------------------------ #
    # Conversions
    # ------------------------------------------------------------------ #

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in NAMES], dtype=complex)

    @classmethod
    def from_vector(cls, values) -> TwoBandCoefficients:
        return cls(*[complex(v) for v in values])

    def to_dict(self) -> dict[str, complex]:
        return asdict(self)

    def to_bipoly(self) -> BiPoly:
        """The curve as a :class:`BiPoly` (``z_shift=1``, as for a nearest-neighbour chain)."""
        if self.A2 == 0 and self.B3 == 0:
            raise ModelInvalid("A2 and B3 both vanish; the curve loses its z-degree")
        coeffs = np.zeros((3, 4), dtype=complex)
        coeffs[2, 1] = 1.0
        coeffs[1, :3] = [self.A0, self.A1, self.A2]
        coeffs[0, :] = [self.B0, self.B1, self.B2, self.B3]
        return BiPoly.from_coeffs(coeffs, z_shift=1, tol=0.0)

    @classmethod
    def from_bipoly(cls, f: BiPoly) -> TwoBandCoefficients:
        """Read coefficients off a curve of this shape, scaled so the zω² term is 1.

        Raises
        ------
        ModelInvalid
            If ``f`` is not of the form ``zω² + ω·(deg ≤ 2) + (deg ≤ 3)``.
        """
        c = f.padded(max(f.r, 2), max(f.u, 3))
        if f.r != 2 or f.u > 3 or c.shape != (3, 4):
            raise ModelInvalid(f"Curve with r={f.r}, u={f.u} is not a two-band curve of this shape")
        top = c[2]
        if top[1] == 0 or np.any(np.delete(top, 1) != 0) or c[1, 3] != 0:
            raise ModelInvalid("Leading ω² coefficient must be a pure multiple of z")
        c = c / top[1]
        return cls(c[1, 0], c[1, 1], c[1, 2], c[0, 0], c[0, 1], c[0, 2], c[0, 3])

    # ------------------------------------------------------------------ #
    # Gauge
    # ------------------------------------------------------------------ #

    def gauge(self, lam: complex) -> TwoBandCoefficients:
        """``A_s → λ^(s−1) A_s``, ``B_s → λ^(s−1) B_s``."""
        if lam == 0:
            raise ZeroLambda("Gauge parameter λ must be nonzero")
        powers = np.array([-1, 0, 1, -1, 0, 1, 2])
        return TwoBandCoefficients.from_vector(self.as_vector() * complex(lam) ** powers)

    def gauge_fixed(self, anchor: complex = 1.0, tol: float = 1e-12) -> TwoBandCoefficients:
        """Representative with ``A₂ = anchor`` (falling back to B₂, A₀, B₀, B₃)."""
        scale = max(float(np.max(np.abs(self.as_vector()))), 1e-300)
        for name, power in GAUGE_ANCHORS:
            value = getattr(self, name)
            if abs(value) > tol * scale:
                lam = (complex(anchor) / value) ** (1.0 / power)
                return self.gauge(lam)
        return self

    def allclose(self, other: TwoBandCoefficients, atol: float = 1e-8) -> bool:
        return bool(np.max(np.abs(self.as_vector() - other.as_vector())) <= atol)

    def gauge_equivalent(self, other: TwoBandCoefficients, atol: float = 1e-8) -> bool:
        """Whether ``other`` is ``self`` up to ``z → λz``."""
        anchor = self.A2 if self.A2 != 0 else 1.0
        return self.gauge_fixed(anchor).allclose(other.gauge_fixed(anchor), atol)

    # ------------------------------------------------------------------ #
    # Symmetries of the branch-point set
    # ------------------------------------------------------------------ #

    def rotated(self, zeta: complex) -> TwoBandCoefficients:
        """``A_s → ζ^(s−2) A_s``, ``B_s → ζ^(s−3) B_s``: branch points move by ``1/ζ``."""
        powers = np.array([-2, -1, 0, -3, -2, -1, 0])
        return TwoBandCoefficients.from_vector(self.as_vector() * complex(zeta) ** powers)

    def conjugated(self) -> TwoBandCoefficients:
        """Complex conjugate coefficients: branch points are conjugated."""
        return TwoBandCoefficients.from_vector(np.conj(self.as_vector()))


def _cubic_terms(c: TwoBandCoefficients) -> tuple[np.ndarray, ...]:
    """``C₀ … C₃`` as polynomials in ω (constant first)."""
    return (
        np.array([c.B0, c.A0]),
        np.array([c.B1, c.A1, 1.0]),
        np.array([c.B2, c.A2]),
        np.array([c.B3]),
    )


def branch_coefficients(c: TwoBandCoefficients) -> np.ndarray:
    """``D₀ … D₆`` of the cubic discriminant in z, without trimming."""
    C0, C1, C2, C3 = _cubic_terms(c)
    mul = P.polymul
    terms = [
        mul(mul(C1, C1), mul(C2, C2)),
        -4 * mul(C0, mul(C2, mul(C2, C2))),
        -4 * mul(mul(C1, mul(C1, C1)), C3),
        18 * mul(mul(C0, C1), mul(C2, C3)),
        -27 * mul(mul(C0, C0), mul(C3, C3)),
    ]
    out = np.zeros(7, dtype=complex)
    for t in terms:
        out[: len(t)] += t
    return out


def branch_polynomial(c: TwoBandCoefficients) -> UniPoly:
    """Branch-point polynomial ``Σ D_s ω^s`` of the two-band curve.

    Built from the cubic discriminant
    ``C₁²C₂² − 4C₀C₂³ − 4C₁³C₃ + 18C₀C₁C₂C₃ − 27C₀²C₃²`` with
    ``C₃ = B₃``, ``C₂ = B₂ + A₂ω``, ``C₁ = B₁ + A₁ω + ω²``, ``C₀ = B₀ + A₀ω``.
    ``D₆ = A₂² − 4B₃``.

    Raises
    ------
    DegenerateCubic
        If ``B₃ = 0`` (the z-cubic drops degree).

    Examples
    --------
    >>> hexagon = TwoBandCoefficients(A0=-2**(-1/3), A2=2**(-1/3), B1=-4**(-1/3), B3=1/(3*4**(1/3)))
    >>> d = branch_polynomial(hexagon).coeffs
    >>> bool(abs(d[0] + d[6]) < 1e-12)
    True
    """
    if c.B3 == 0:
        raise DegenerateCubic("B3 = 0: the z-cubic drops degree")
    d = branch_coefficients(c)
    if d[6] == 0:
        logger.warning("D6 = A2² − 4B3 vanishes; fewer than six finite branch points")
    return UniPoly.from_coeffs(d, tol=0.0)
