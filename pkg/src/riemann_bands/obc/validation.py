"""Cross-check of GBZ arcs against finite open chains."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from riemann_bands.lattice import BlochHamiltonian, char_poly, finite_chain_spectrum
from riemann_bands.obc.arcs import SpectralArc
from riemann_bands.polyalg import Plane, all_roots
from riemann_bands.polyalg.univariate import sort_canonical

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObcValidation:
    """Distances from finite-chain eigenvalues to the arc union.

    ``distance`` is the largest distance after dropping ``n_outliers``
    eigenvalues (at most ``r·μ``, the farthest ones).
    """

    n_cells: int
    gauge_radius: float
    distance: float
    n_outliers: int
    outliers: np.ndarray
    eigenvalues: np.ndarray

    def passed(self, threshold: float) -> bool:
        return self.distance < threshold


def distances_to_arcs(values, arcs: list[SpectralArc]) -> np.ndarray:
    """Distance from each value to the nearest arc segment."""
    v = np.asarray(values, dtype=complex)
    best = np.full(len(v), np.inf)
    for arc in arcs:
        s = arc.samples
        if len(s) == 1:
            best = np.minimum(best, np.abs(v - s[0]))
            continue
        a, b = s[:-1], s[1:]
        d = b - a
        denom = np.where(np.abs(d) > 0, np.abs(d) ** 2, 1.0)
        t = ((v[:, None] - a[None, :]) * np.conj(d)[None, :]).real / denom[None, :]
        t = np.clip(t, 0.0, 1.0)
        closest = a[None, :] + t * d[None, :]
        best = np.minimum(best, np.abs(v[:, None] - closest).min(axis=1))
    return best


def gauge_radius_for(arcs: list[SpectralArc], H: BlochHamiltonian, mu: int) -> float:
    """Median ``|z_(μ)|`` along the arcs."""
    f = char_poly(H)
    moduli = []
    for arc in arcs:
        for omega in arc.samples[:: max(1, len(arc.samples) // 32)]:
            poly = f.fiber_poly(Plane.OMEGA, omega)
            if poly.degree < f.u:
                continue
            moduli.append(abs(sort_canonical(all_roots(poly))[mu - 1]))
    return float(np.median(moduli)) if moduli else 1.0


def validate_obc(
    arcs: list[SpectralArc],
    H: BlochHamiltonian,
    N: int = 60,
    mu: int = 1,
    gauge_radius: float | None = None,
) -> ObcValidation:
    """Compare arcs with the spectrum of an ``N``-cell open chain.

    Parameters
    ----------
    arcs : list[SpectralArc]
        OBC arcs of ``char_poly(H)`` (up to gauge).
    H : BlochHamiltonian
        Bulk model.
    N : int
        Cell count.
    mu : int
        Boundary-condition index; up to ``H.r * mu`` outliers are dropped.
    gauge_radius : float, optional
        Imaginary-gauge factor for the chain; defaults to the median
        ``|z_(μ)|`` on the arcs.

    Returns
    -------
    ObcValidation
    """
    beta = gauge_radius if gauge_radius is not None else gauge_radius_for(arcs, H, mu)
    values = finite_chain_spectrum(H, N, gauge_radius=beta)
    dist = distances_to_arcs(values, arcs)
    order = np.argsort(dist)
    n_drop = min(H.r * mu, len(values) - 1)
    kept = order[: len(values) - n_drop]
    dropped = order[len(values) - n_drop :]
    distance = float(dist[kept].max()) if len(kept) else 0.0
    logger.info(
        "Finite chain N=%d (β=%.4g): distance %.3g after dropping %d", N, beta, distance, n_drop
    )
    return ObcValidation(
        n_cells=N,
        gauge_radius=beta,
        distance=distance,
        n_outliers=n_drop,
        outliers=values[dropped],
        eigenvalues=values,
    )
