"""Generalized-Brillouin-zone sweep.

For each relative phase θ the resultant ``Res_z(f(ω, z), f(ω, z e^{iθ}))``
vanishes exactly where two fiber roots satisfy ``z_a = z_b e^{iθ}``, so
sweeping θ over a uniform grid samples every ω with an equal-modulus pair.
The diagonal factor (the constant-in-z coefficient) and one power of the
z-leading coefficient are divided out before root finding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from riemann_bands.errors import ModelInvalid, NonConvergence
from riemann_bands.polyalg import BiPoly, Plane, UniPoly, all_roots, cluster_roots, resultant
from riemann_bands.polyalg.univariate import divide_exact, sort_canonical

logger = logging.getLogger(__name__)

MIN_THETA_GRID = 64
_DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class GbzProblem:
    """Curve plus boundary-condition index ``μ`` (``1 ≤ μ ≤ u − 1``)."""

    f: BiPoly
    mu: int = 1

    def __post_init__(self) -> None:
        if self.f.u < 2:
            raise ModelInvalid(f"GBZ needs z-degree ≥ 2, got u={self.f.u}")
        if not 1 <= self.mu <= self.f.u - 1:
            raise ValueError(f"mu must be in [1, {self.f.u - 1}], got {self.mu}")


def _column_poly(f: BiPoly, j: int) -> UniPoly:
    return UniPoly.from_coeffs(f.coeffs[:, j], tol=0.0)


def _shift_resultant(f: BiPoly, theta: float) -> UniPoly:
    """``Res_z(f, f(·, z e^{iθ}))`` with the trivial factors removed."""
    res = resultant(f, f.scale_z(np.exp(1j * theta)), eliminate=Plane.Z)
    if res.is_zero:
        return res
    for trivial in (_column_poly(f, 0), _column_poly(f, f.u)):
        if trivial.degree >= 1 and res.degree >= trivial.degree:
            res = divide_exact(res, trivial)
    return res


def _sorted_moduli(f: BiPoly, omega: complex) -> np.ndarray | None:
    poly = f.fiber_poly(Plane.OMEGA, omega)
    if poly.degree < f.u:
        return None
    try:
        return np.abs(sort_canonical(all_roots(poly)))
    except NonConvergence:
        return None


def _has_equal_pair(moduli: np.ndarray, tol: float) -> bool:
    gaps = np.diff(moduli)
    return bool(np.any(gaps <= tol * np.maximum(moduli[1:], 1e-300)))


def gbz_candidates(
    prob: GbzProblem,
    theta_grid: int = 256,
    tol: float = 1e-6,
    progress: bool = False,
) -> np.ndarray:
    """ω values whose fiber has two roots of equal modulus.

    Parameters
    ----------
    prob : GbzProblem
        Curve and μ (μ is not used here; see :func:`filter_rank`).
    theta_grid : int
        Number of grid intervals on ``[0, 2π)``; θ = 0 is skipped.
    tol : float
        Relative modulus tolerance for the equal-pair check.
    progress : bool
        Show a progress bar over θ.

    Returns
    -------
    np.ndarray
        Deduplicated candidates, sorted by ``(|ω|, arg ω)``.

    Raises
    ------
    ValueError
        If ``theta_grid`` is below 64.
    """
    if theta_grid < MIN_THETA_GRID:
        raise ValueError(f"theta_grid must be ≥ {MIN_THETA_GRID}, got {theta_grid}")
    f = prob.f
    found: list[complex] = []
    skipped = 0
    thetas = 2 * np.pi * np.arange(1, theta_grid) / theta_grid
    for theta in tqdm(thetas, desc="GBZ sweep", disable=not progress):
        res = _shift_resultant(f, theta)
        if res.is_zero or res.degree < 1:
            skipped += 1
            logger.debug("θ=%.4f: shifted resultant is trivial, skipped", theta)
            continue
        try:
            roots = all_roots(res, tol=1e-6)
        except NonConvergence:
            skipped += 1
            logger.warning("θ=%.4f: resultant roots did not converge, skipped", theta)
            continue
        for omega in roots:
            moduli = _sorted_moduli(f, omega)
            if moduli is not None and _has_equal_pair(moduli, tol):
                found.append(complex(omega))
    if skipped:
        logger.warning("GBZ sweep skipped %d of %d θ values", skipped, len(thetas))
    if not found:
        return np.zeros(0, dtype=complex)
    centers = [c for c, _ in cluster_roots(found, tol=_DEDUP_TOL)]
    logger.info("GBZ sweep: %d candidates from %d θ values", len(centers), len(thetas))
    return sort_canonical(centers)


def rank_ratio(f: BiPoly, omega: complex, mu: int) -> float | None:
    """``|z_(μ)| / |z_(μ+1)|`` in the modulus-sorted fiber, or ``None`` at a pole."""
    moduli = _sorted_moduli(f, omega)
    if moduli is None or moduli[mu] == 0:
        return None
    return float(moduli[mu - 1] / moduli[mu])


def filter_rank(candidates, prob: GbzProblem, tol: float = 1e-6) -> np.ndarray:
    """Keep ω whose equal-modulus pair sits at ranks μ and μ + 1.

    Examples
    --------
    >>> from riemann_bands.lattice import BlochHamiltonian, char_poly
    >>> prob = GbzProblem(char_poly(BlochHamiltonian.ssh(1.0, 1.0)), mu=1)
    >>> filter_rank([0.5, 3.0], prob).tolist()
    [(0.5+0j)]
    """
    kept = []
    for omega in np.asarray(candidates, dtype=complex):
        ratio = rank_ratio(prob.f, omega, prob.mu)
        if ratio is not None and ratio >= 1.0 - tol:
            kept.append(omega)
    return np.array(kept, dtype=complex)
