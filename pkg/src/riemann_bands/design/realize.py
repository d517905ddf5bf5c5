"""Two-band nearest-neighbour lattices realizing a coefficient set.

Expanding ``z·det(H(z) − ω)`` for :class:`TwoBandNN` and matching terms
with ``zω² + ω Σ A_s z^s + Σ B_s z^s`` gives

- ``a₋₁ = −A₀`` and ``a₁, b₁`` the two roots of ``x² + A₂x + B₃``;
- ``a₀ + b₀ = −A₁`` and ``B₂ − B₀ = a₁b₀ + a₀b₁ − a₋₁b₀`` (linear in b₀);
- ``u_c v_c = a₋₁b₀ − B₀`` and ``u_c² + v_c² = a₀b₀ + a₋₁b₁ − B₁``.

Both orderings of the quadratic roots and the four sign choices for
``u_c ± v_c`` give up to eight lattices.
"""

from __future__ import annotations

import logging
from itertools import product

import numpy as np

from riemann_bands.design.coefficients import TwoBandCoefficients
from riemann_bands.errors import DegenerateRealization
from riemann_bands.lattice import TwoBandNN, char_poly
from riemann_bands.polyalg import BiPoly, UniPoly, all_roots

logger = logging.getLogger(__name__)

ROUND_TRIP_TOL = 1e-10
_DEDUPE_TOL = 1e-12
_SINGULAR_TOL = 1e-13


def _aligned(f: BiPoly) -> np.ndarray:
    """Coefficients on the fixed grid ``ω^0..ω^2 × z^{-1}..z^2`` (as Laurent powers, shifted by one)."""
    out = np.zeros((3, 4), dtype=complex)
    for j in range(f.u + 1):
        k = j - f.z_shift + 1
        if not 0 <= k <= 3:
            if np.any(f.coeffs[:, j] != 0):
                raise DegenerateRealization(f"Lattice curve has a z power {k - 1} outside [-1, 2]")
            continue
        out[: f.r + 1, k] = f.coeffs[:, j]
    return out


def round_trip_error(lattice: TwoBandNN, c: TwoBandCoefficients) -> float:
    """Largest coefficient mismatch between ``char_poly(lattice)`` and ``c``, relative to ``c``."""
    got = _aligned(char_poly(lattice.to_hamiltonian()))
    want = _aligned(c.to_bipoly())
    scale = max(float(np.max(np.abs(want))), 1.0)
    return float(np.max(np.abs(got - want))) / scale


def _same(x: TwoBandNN, y: TwoBandNN) -> bool:
    a = np.array([x.a1, x.a0, x.am1, x.b1, x.b0, x.u_c, x.v_c])
    b = np.array([y.a1, y.a0, y.am1, y.b1, y.b0, y.u_c, y.v_c])
    return bool(np.max(np.abs(a - b)) <= _DEDUPE_TOL * max(1.0, float(np.max(np.abs(a)))))


def _for_ordering(c: TwoBandCoefficients, a1: complex, b1: complex) -> list[TwoBandNN]:
    am1 = -c.A0
    den = a1 - b1 - am1
    if abs(den) <= _SINGULAR_TOL * max(1.0, abs(a1), abs(b1), abs(am1)):
        raise DegenerateRealization(f"Linear step is singular: a1 - b1 - a_-1 = {den:.3g}")
    b0 = (c.B2 - c.B0 + c.A1 * b1) / den
    a0 = -c.A1 - b0
    uv = am1 * b0 - c.B0
    u2v2 = a0 * b0 + am1 * b1 - c.B1
    plus = np.emath.sqrt(u2v2 + 2 * uv)
    minus = np.emath.sqrt(u2v2 - 2 * uv)
    out = []
    for s1, s2 in product((1, -1), repeat=2):
        u_c = 0.5 * (s1 * plus + s2 * minus)
        v_c = 0.5 * (s1 * plus - s2 * minus)
        out.append(TwoBandNN(a1, a0, am1, b1, b0, complex(u_c), complex(v_c)))
    return out


def realize_two_band(c: TwoBandCoefficients) -> list[TwoBandNN]:
    """All nearest-neighbour two-band lattices whose curve is ``c``.

    Parameters
    ----------
    c : TwoBandCoefficients
        Curve coefficients.

    Returns
    -------
    list[TwoBandNN]
        Distinct realizations (at most eight), each verified against ``c``
        to 1e-10 coefficientwise.

    Raises
    ------
    DegenerateRealization
        If the linear step is singular for both orderings of ``a₁, b₁`` or no
        candidate reproduces ``c``.

    Examples
    --------
    >>> hexagon = TwoBandCoefficients(A0=-2**(-1/3), A2=2**(-1/3), B1=-4**(-1/3), B3=1/(3*4**(1/3)))
    >>> len(realize_two_band(hexagon))
    8
    """
    roots = all_roots(UniPoly.from_coeffs([c.B3, c.A2, 1.0], tol=0.0))
    r1, r2 = complex(roots[0]), complex(roots[1])

    candidates: list[TwoBandNN] = []
    failures: list[str] = []
    for a1, b1 in ((r1, r2), (r2, r1)):
        try:
            candidates.extend(_for_ordering(c, a1, b1))
        except DegenerateRealization as exc:
            failures.append(str(exc))
    if not candidates:
        raise DegenerateRealization("; ".join(failures))

    out: list[TwoBandNN] = []
    for lattice in candidates:
        err = round_trip_error(lattice, c)
        if err > ROUND_TRIP_TOL:
            logger.debug("Dropping realization with round-trip error %.2e", err)
            continue
        if not any(_same(lattice, kept) for kept in out):
            out.append(lattice)
    if not out:
        raise DegenerateRealization("No candidate lattice reproduces the coefficients")
    logger.info("Realized %d two-band lattices", len(out))
    return out
