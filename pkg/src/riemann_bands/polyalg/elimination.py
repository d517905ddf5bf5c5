"""Sylvester resultants and discriminants.

Bivariate resultants are evaluated at equispaced nodes on a circle in the
remaining variable (one LU determinant per node) and interpolated back to
coefficients with an FFT. The node count exceeds the a-priori degree bound,
so the interpolation is exact up to rounding.

The discriminant convention is the classical one,
``disc(p) = lead^(2n−2) ∏_{i<j} (x_i − x_j)^2 = (−1)^(n(n−1)/2) Res(p, p') / lead``;
for a cubic this is ``C1²C2² − 4C0C2³ − 4C1³C3 + 18C0C1C2C3 − 27C0²C3²``.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import linalg

from riemann_bands.errors import DegenerateLeadingCoefficient, ZeroPolynomial
from riemann_bands.polyalg.bivariate import BiPoly, Plane
from riemann_bands.polyalg.univariate import ZERO_COEFF_TOL, UniPoly

logger = logging.getLogger(__name__)

# Nodes are rotated by half a spacing so that a factor like (x − 1) never
# vanishes on the grid.
_NODE_PHASE = 0.5


def sylvester_matrix(p, q) -> np.ndarray:
    """Sylvester matrix of two univariate coefficient vectors (constant first).

    The nominal degrees are ``len(p) − 1`` and ``len(q) − 1``; vanishing
    leading entries are kept so that the layout is fixed across nodes.
    """
    a = np.asarray(p, dtype=complex)[::-1]
    b = np.asarray(q, dtype=complex)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    s = np.zeros((size, size), dtype=complex)
    for row in range(n):
        s[row, row : row + m + 1] = a
    for row in range(m):
        s[n + row, row : row + n + 1] = b
    return s


def univariate_resultant(p: UniPoly, q: UniPoly) -> complex:
    """Res(p, q) as the determinant of the Sylvester matrix."""
    if p.degree + q.degree == 0:
        return 1.0 + 0j
    return complex(linalg.det(sylvester_matrix(p.coeffs, q.coeffs)))


def univariate_discriminant(p: UniPoly) -> complex:
    """Discriminant of a univariate polynomial of degree ≥ 2.

    Examples
    --------
    >>> round(abs(univariate_discriminant(UniPoly.from_coeffs([-1, 0, 1]))), 12)
    4.0
    """
    n = p.degree
    if n < 2:
        raise ValueError(f"Discriminant needs degree ≥ 2, got {n}")
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * univariate_resultant(p, p.derivative()) / p.leading


# ---- Bivariate elimination ----


def _split(f: BiPoly, eliminate: Plane) -> np.ndarray:
    """Coefficient matrix with row k = coefficient of (eliminated var)^k."""
    return f.coeffs if Plane(eliminate) is Plane.OMEGA else f.coeffs.T


def _nodes(count: int, radius: float = 1.0) -> np.ndarray:
    k = np.arange(count)
    return radius * np.exp(2j * np.pi * (k + _NODE_PHASE) / count)


def _interpolate(values: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Coefficients of the polynomial taking ``values`` at :func:`_nodes`."""
    count = len(values)
    raw = np.fft.fft(values) / count
    j = np.arange(count)
    return raw / (radius**j * np.exp(2j * np.pi * j * _NODE_PHASE / count))


def _degree_bound(a: np.ndarray, b: np.ndarray) -> int:
    """Bézout-type bound on the degree of Res in the remaining variable."""
    m, n = a.shape[0] - 1, b.shape[0] - 1
    return n * (a.shape[1] - 1) + m * (b.shape[1] - 1)


def _values_at(split: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate every row polynomial at every node: shape ``(len(x), rows)``."""
    return np.stack([P.polyval(x, row) for row in split], axis=1)


def resultant_values(
    p: BiPoly, q: BiPoly, eliminate: Plane, nodes: np.ndarray
) -> np.ndarray:
    """Sylvester determinants at given values of the remaining variable."""
    a = _split(p, eliminate)
    b = _split(q, eliminate)
    if not np.any(a[-1]) and not np.any(b[-1]):
        raise DegenerateLeadingCoefficient(
            f"Both leading coefficients in {Plane(eliminate).value} vanish identically"
        )
    if a.shape[0] < 2 or b.shape[0] < 2:
        raise ValueError("Both polynomials need positive degree in the eliminated variable")
    pa = _values_at(a, nodes)
    pb = _values_at(b, nodes)
    return np.array(
        [linalg.det(sylvester_matrix(pa[k], pb[k])) for k in range(len(nodes))],
        dtype=complex,
    )


def resultant(
    p: BiPoly, q: BiPoly, eliminate: Plane, tol: float = ZERO_COEFF_TOL
) -> UniPoly:
    """Resultant of two bivariate polynomials with one variable eliminated.

    Parameters
    ----------
    p, q : BiPoly
        Polynomials with positive degree in ``eliminate``.
    eliminate : Plane
        Variable to eliminate; the result is a polynomial in the other one.
    tol : float
        Relative magnitude under which result coefficients are zeroed.

    Returns
    -------
    UniPoly
        ``det Syl(p, q)`` as a polynomial in the remaining variable.

    Raises
    ------
    DegenerateLeadingCoefficient
        If both leading coefficients in ``eliminate`` vanish identically.
    """
    bound = _degree_bound(_split(p, eliminate), _split(q, eliminate))
    count = bound + 1
    nodes = _nodes(count)
    values = resultant_values(p, q, eliminate, nodes)
    coeffs = _interpolate(values)
    logger.debug("Resultant eliminating %s: %d nodes", Plane(eliminate).value, count)
    return UniPoly.from_coeffs(coeffs, tol=tol)


def discriminant(f: BiPoly, wrt: Plane, tol: float = ZERO_COEFF_TOL) -> UniPoly:
    """Discriminant of ``f`` with respect to one variable.

    Computed as ``(−1)^(n(n−1)/2) Res(f, ∂f) / lead`` with the division
    carried out at the interpolation nodes, ``n`` the degree in ``wrt``.

    Parameters
    ----------
    f : BiPoly
        Curve with degree ≥ 2 in ``wrt``.
    wrt : Plane
        Variable whose root collisions are detected.

    Returns
    -------
    UniPoly
        Discriminant as a polynomial in the other variable.

    Raises
    ------
    ValueError
        If the degree in ``wrt`` is below 2.
    ZeroPolynomial
        If the discriminant vanishes identically (a repeated factor).
    """
    wrt = Plane(wrt)
    n = f.degree(wrt)
    if n < 2:
        raise ValueError(f"Discriminant needs degree ≥ 2 in {wrt.value}, got {n}")
    df = f.derivative(wrt)
    split = _split(f, wrt)
    count = _degree_bound(split, _split(df, wrt)) + 1
    nodes = _nodes(count)
    res = resultant_values(f, df, wrt, nodes)
    lead = P.polyval(nodes, split[-1])
    sign = (-1) ** (n * (n - 1) // 2)
    disc = UniPoly.from_coeffs(_interpolate(sign * res / lead), tol=tol)
    if disc.is_zero:
        raise ZeroPolynomial(
            f"Discriminant with respect to {wrt.value} vanishes identically "
            "(the curve has a repeated component)"
        )
    return disc
