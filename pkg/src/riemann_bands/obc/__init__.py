"""Open-boundary spectra: GBZ sweep, arc assembly, cut checks, finite-chain validation."""

from __future__ import annotations

from riemann_bands.obc.arcs import (
    Endpoint,
    EndpointKind,
    ObcSpectrum,
    SpectralArc,
    assemble_arcs,
)
from riemann_bands.obc.consistency import CutVerdict, cut_consistency, cut_groups, hugging_loop
from riemann_bands.obc.gbz import GbzProblem, filter_rank, gbz_candidates, rank_ratio
from riemann_bands.obc.validation import ObcValidation, distances_to_arcs, validate_obc
from riemann_bands.polyalg import BiPoly
from riemann_bands.riemann.monodromy import branch_points


def obc_spectrum(
    f: BiPoly,
    mu: int = 1,
    theta_grid: int = 256,
    tol: float = 1e-6,
    strict: bool = True,
    progress: bool = False,
) -> ObcSpectrum:
    """Sweep, rank-filter and assemble the OBC spectrum of one μ sector."""
    prob = GbzProblem(f, mu)
    candidates = gbz_candidates(prob, theta_grid=theta_grid, tol=tol, progress=progress)
    kept = filter_rank(candidates, prob, tol=tol)
    bps = branch_points(f, strict=strict)
    return ObcSpectrum(mu=mu, arcs=tuple(assemble_arcs(kept, bps, mu)))


__all__ = [
    "CutVerdict",
    "Endpoint",
    "EndpointKind",
    "GbzProblem",
    "ObcSpectrum",
    "ObcValidation",
    "SpectralArc",
    "assemble_arcs",
    "cut_consistency",
    "cut_groups",
    "distances_to_arcs",
    "filter_rank",
    "gbz_candidates",
    "hugging_loop",
    "obc_spectrum",
    "rank_ratio",
    "validate_obc",
]
