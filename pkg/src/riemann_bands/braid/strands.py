"""Eigenvalue strands along z-loops and their braid words.

Strands are ranked by ``Re ω`` (ties by ``Im ω``). Between accepted steps
at most one adjacent pair may exchange rank, so every crossing is seen on
its own; a crossing of the strands ranked μ and μ + 1 is σ_μ when the
strand leaving rank μ passes below the other in ``Im ω``, and σ_μ⁻¹ when it
passes above.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from riemann_bands.braid.loops import LoopSpec
from riemann_bands.braid.words import BraidWord
from riemann_bands.errors import LeadingCoefficientVanishes, StrandCollision
from riemann_bands.polyalg import BiPoly, Plane, all_roots
from riemann_bands.riemann.monodromy import PointKind, special_points
from riemann_bands.riemann.tracking import FiberTracker

logger = logging.getLogger(__name__)

_LEAD_TOL = 1e-10
_COLLISION_TOL = 1e-12


@dataclass(frozen=True)
class StrandTrace:
    """Tracked ω strands; row ``k`` of ``omegas`` is the fiber at ``points[k]``."""

    params: np.ndarray
    points: np.ndarray
    omegas: np.ndarray

    @property
    def r(self) -> int:
        return self.omegas.shape[1]

    def to_frame(self) -> pd.DataFrame:
        """Long table with columns ``t, strand, re_omega, im_omega``."""
        steps, r = self.omegas.shape
        t = self.params / max(float(self.params[-1]), 1e-300) if steps else self.params
        return pd.DataFrame(
            {
                "t": np.repeat(t, r),
                "strand": np.tile(np.arange(1, r + 1), steps),
                "re_omega": self.omegas.real.ravel(),
                "im_omega": self.omegas.imag.ravel(),
            }
        )


def rank_order(omegas: np.ndarray) -> np.ndarray:
    """Strand indices by rank: ``order[k]`` is the strand at rank ``k + 1``."""
    return np.lexsort((omegas.imag, omegas.real))


def _single_swap(old: np.ndarray, new: np.ndarray) -> bool:
    a, b = rank_order(old), rank_order(new)
    moved = np.flatnonzero(a != b)
    if len(moved) == 0:
        return True
    return len(moved) == 2 and moved[1] == moved[0] + 1


def _check_leading(f: BiPoly, pts: np.ndarray) -> None:
    lead = np.abs(f.D_r(pts))
    scale = float(np.max(np.abs(f.D_r.coeffs))) * max(1.0, float(np.max(np.abs(pts)))) ** f.D_r.degree
    if lead.min() <= _LEAD_TOL * scale:
        k = int(np.argmin(lead))
        raise LeadingCoefficientVanishes(f"D_r vanishes on the loop near z={pts[k]:.6g}")


def trace_strands(f: BiPoly, loop: LoopSpec) -> StrandTrace:
    """Track all ``r`` ω roots along ``loop``.

    Raises
    ------
    LeadingCoefficientVanishes
        If D_r has a zero on the loop.
    PathTooCloseToBranchPoint, TrackingAmbiguity
        From the tracker.
    """
    pts = loop.points()
    _check_leading(f, pts)
    start = all_roots(f.fiber_poly(Plane.Z, pts[0]))
    start = start[rank_order(start)]
    tracker = FiberTracker(f, Plane.Z)
    _, trace = tracker.run(pts, start, accept=_single_swap, record=True)
    params, points, omegas = trace.as_arrays()
    logger.debug("Traced %d strands over %d steps", f.r, len(params))
    return StrandTrace(params=params, points=points, omegas=omegas)


def _crossing_sign(old: np.ndarray, new: np.ndarray, a: int, b: int) -> int:
    """Sign of the crossing where strand ``a`` (leaving rank μ) meets ``b``."""
    d0 = (old[a] - old[b]).real
    d1 = (new[a] - new[b]).real
    s = 0.5 if d0 == d1 else d0 / (d0 - d1)
    s = min(1.0, max(0.0, s))
    wa = old[a] + s * (new[a] - old[a])
    wb = old[b] + s * (new[b] - old[b])
    gap = (wb - wa).imag
    scale = max(1.0, abs(wa), abs(wb))
    if abs(gap) <= _COLLISION_TOL * scale:
        raise StrandCollision(f"Strands meet at ω={wa:.6g}; the loop passes an exceptional point")
    return 1 if gap > 0 else -1


def word_from_trace(trace: StrandTrace) -> BraidWord:
    """Read crossings off consecutive steps; multi-swaps are split lower μ first."""
    letters: list[tuple[int, int]] = []
    omegas = trace.omegas
    for old, new in zip(omegas[:-1], omegas[1:]):
        current = list(rank_order(old))
        target = list(rank_order(new))
        if current == target:
            continue
        for k in range(len(current)):
            if current[k] == target[k]:
                continue
            j = current.index(target[k])
            for pos in range(j - 1, k - 1, -1):
                a, b = current[pos], current[pos + 1]
                letters.append((pos + 1, _crossing_sign(old, new, a, b)))
                current[pos], current[pos + 1] = b, a
    return BraidWord(tuple(letters), trace.r)


def braid_on_loop(f: BiPoly, loop: LoopSpec) -> BraidWord:
    """Braid word of the ω strands along a closed z-loop.

    Examples
    --------
    A single band never braids::

        braid_on_loop(one_band_curve, LoopSpec.circle(0, 1.0)).letters == ()
    """
    if f.r == 1:
        return BraidWord((), 1)
    word = word_from_trace(trace_strands(f, loop))
    logger.info("Braid word on %s loop: %s", loop.kind.value, word.notation())
    return word


def pole_braid(f: BiPoly, radius: float) -> BraidWord:
    """Braid word on a counterclockwise circle about ``z = 0``.

    Raises
    ------
    ValueError
        If a z-plane branch point lies inside the circle.
    """
    if f.r >= 2:
        inside = [
            p.location
            for p in special_points(f, Plane.Z, strict=False)
            if p.kind is PointKind.BRANCH and abs(p.location) <= radius
        ]
        if inside:
            raise ValueError(
                f"Circle of radius {radius} encloses branch points {inside}; pick a smaller radius"
            )
    return braid_on_loop(f, LoopSpec.circle(0j, radius))
