"""Univariate complex polynomials and simultaneous root finding.

Coefficients are stored constant term first (index = power), the layout of
``numpy.polynomial.polynomial``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from riemann_bands.errors import NonConvergence, ZeroPolynomial

logger = logging.getLogger(__name__)

ZERO_COEFF_TOL = 1e-12
_MAX_ITER = 500
_STEP_TOL = 1e-14


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one complex variable.

    Parameters
    ----------
    coeffs : np.ndarray
        Complex coefficients, ``coeffs[k]`` multiplies ``x**k``. The highest
        stored coefficient is nonzero unless the polynomial is zero, in which
        case ``coeffs`` is ``[0]``.
    """

    coeffs: np.ndarray

    @classmethod
    def from_coeffs(cls, coeffs, tol: float = ZERO_COEFF_TOL) -> UniPoly:
        """Build a normalized polynomial, trimming negligible top coefficients.

        Parameters
        ----------
        coeffs : array_like
            Coefficients, constant term first.
        tol : float
            Coefficients with ``|c| <= tol * max|c|`` are set to exactly zero.

        Returns
        -------
        UniPoly
        """
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.size == 0:
            return cls(np.zeros(1, dtype=complex))
        scale = np.max(np.abs(c))
        if scale == 0 or not np.isfinite(scale):
            if not np.isfinite(scale):
                raise ZeroPolynomial("Polynomial has non-finite coefficients")
            return cls(np.zeros(1, dtype=complex))
        c[np.abs(c) <= tol * scale] = 0
        nonzero = np.flatnonzero(c)
        return cls(c[: nonzero[-1] + 1])

    @property
    def degree(self) -> int:
        """Highest power with a nonzero coefficient (0 for constants and zero)."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, x):
        return eval_poly(self, x)

    def derivative(self) -> UniPoly:
        if self.degree == 0:
            return UniPoly(np.zeros(1, dtype=complex))
        return UniPoly.from_coeffs(P.polyder(self.coeffs), tol=0.0)

    def __mul__(self, other: UniPoly) -> UniPoly:
        return UniPoly.from_coeffs(P.polymul(self.coeffs, other.coeffs), tol=0.0)

    def monic(self) -> UniPoly:
        if self.is_zero:
            raise ZeroPolynomial("Zero polynomial has no monic form")
        return UniPoly(self.coeffs / self.coeffs[-1])

    def roots(self, tol: float = 1e-8) -> np.ndarray:
        return all_roots(self, tol=tol)


def eval_poly(p: UniPoly, x):
    """Evaluate a polynomial by Horner's scheme.

    Parameters
    ----------
    p : UniPoly
        Polynomial to evaluate.
    x : complex or array_like
        Evaluation point(s).

    Returns
    -------
    complex or np.ndarray

    Examples
    --------
    >>> abs(eval_poly(UniPoly.from_coeffs([-1, 0, 1]), 1.0))
    0.0
    """
    value = P.polyval(x, p.coeffs)
    if np.ndim(value) == 0:
        return complex(value)
    return value


def canonical_order(values) -> np.ndarray:
    """Indices sorting complex values by modulus, then by argument in (−π, π]."""
    v = np.asarray(values, dtype=complex)
    return np.lexsort((np.angle(v), np.abs(v)))


def sort_canonical(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    return v[canonical_order(v)]


def all_roots(p: UniPoly, tol: float = 1e-8, max_iter: int = _MAX_ITER) -> np.ndarray:
    """All roots of a polynomial by Ehrlich–Aberth simultaneous iteration.

    Exact zero roots (vanishing low-order coefficients) are split off first;
    the remaining roots start on a circle sized from the coefficient bound and
    are updated jointly until the corrections stall.

    Parameters
    ----------
    p : UniPoly
        Polynomial of degree ≥ 1.
    tol : float
        Maximum backward residual ``|p(x)| / Σ|c_k||x|^k`` accepted.
    max_iter : int
        Iteration cap.

    Returns
    -------
    np.ndarray
        ``p.degree`` roots with multiplicity, sorted by ``(|x|, arg x)``.

    Raises
    ------
    ZeroPolynomial
        If ``p`` is identically zero.
    NonConvergence
        If the residual check fails after the iteration cap.
    ValueError
        If ``p`` is a nonzero constant.
    """
    if p.is_zero:
        raise ZeroPolynomial("Cannot find roots of the zero polynomial")
    if p.degree < 1:
        raise ValueError(f"Polynomial of degree {p.degree} has no roots")

    c = p.coeffs
    n_zero = int(np.flatnonzero(c)[0])
    reduced = c[n_zero:]
    n = len(reduced) - 1
    roots = np.zeros(n_zero, dtype=complex)
    if n == 0:
        return roots

    a = reduced / reduced[-1]
    if n == 1:
        found = np.array([-a[0]])
    else:
        found = _aberth(a, max_iter)

    residual = _backward_residual(a, found)
    if residual > tol:
        raise NonConvergence(
            f"Root residual {residual:.3e} exceeds tolerance {tol:.1e} "
            f"for degree-{n} polynomial"
        )
    out = np.concatenate([roots, found])
    return sort_canonical(out)


def _aberth(a: np.ndarray, max_iter: int) -> np.ndarray:
    """Aberth iteration on a monic polynomial (constant term first)."""
    n = len(a) - 1
    da = P.polyder(a)
    # Fujiwara-style radius: every root satisfies |x| <= 2 max |a_k|^(1/(n-k))
    powers = np.abs(a[:-1]) ** (1.0 / (n - np.arange(n)))
    radius = max(float(np.max(powers)), 1e-300)
    center = -a[n - 1] / n
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = center + radius * np.exp(1j * angles)

    eye = np.eye(n, dtype=bool)
    for iteration in range(max_iter):
        pz = P.polyval(z, a)
        dpz = P.polyval(z, da)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dpz != 0, pz / dpz, pz)
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.all(np.abs(w) <= _STEP_TOL * (1.0 + np.abs(z))):
            logger.debug("Aberth converged in %d iterations (degree %d)", iteration + 1, n)
            break
    else:
        logger.debug("Aberth hit iteration cap %d (degree %d)", max_iter, n)
    return z


def _backward_residual(a: np.ndarray, roots: np.ndarray) -> float:
    """Largest ``|p(x)| / Σ|a_k||x|^k`` over the roots."""
    num = np.abs(P.polyval(roots, a))
    den = P.polyval(np.abs(roots), np.abs(a))
    return float(np.max(num / np.maximum(den, 1e-300)))


def cluster_roots(roots, tol: float = 1e-7) -> list[tuple[complex, int]]:
    """Group roots closer than ``tol * scale`` and report multiplicities.

    Parameters
    ----------
    roots : array_like
        Complex roots.
    tol : float
        Relative clustering distance; ``scale = max(1, max|root|)``.

    Returns
    -------
    list[tuple[complex, int]]
        ``(center, multiplicity)`` per cluster, sorted canonically by center.
    """
    r = np.asarray(roots, dtype=complex)
    if r.size == 0:
        return []
    scale = max(1.0, float(np.max(np.abs(r))))
    pts = np.column_stack([r.real, r.imag])
    tree = cKDTree(pts)
    pairs = tree.query_pairs(tol * scale, output_type="ndarray")
    n = len(r)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    n_comp, labels = connected_components(graph, directed=False)
    clusters = []
    for k in range(n_comp):
        members = r[labels == k]
        clusters.append((complex(members.mean()), int(members.size)))
    order = canonical_order([c for c, _ in clusters])
    return [clusters[i] for i in order]


def from_roots(roots, leading: complex = 1.0) -> UniPoly:
    """Polynomial ``leading * ∏(x − root)``."""
    return UniPoly.from_coeffs(leading * P.polyfromroots(np.asarray(roots, dtype=complex)), tol=0.0)


def divide_exact(num: UniPoly, den: UniPoly, tol: float = 1e-8) -> UniPoly:
    """Quotient of an exact polynomial division.

    Raises
    ------
    ZeroPolynomial
        If ``den`` is zero.
    """
    if den.is_zero:
        raise ZeroPolynomial("Division by the zero polynomial")
    quo, rem = P.polydiv(num.coeffs, den.coeffs)
    scale = max(float(np.max(np.abs(num.coeffs))), 1e-300)
    rem_size = float(np.max(np.abs(rem))) / scale
    if rem_size > tol:
        logger.warning("Inexact polynomial division: relative remainder %.2e", rem_size)
    return UniPoly.from_coeffs(quo)
