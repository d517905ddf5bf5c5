"""Branch-cut consistency from the monodromy representation.

A cut drawn through a group of branch points is admissible only if a thin
loop hugging the cut has trivial monodromy: crossing such a loop must not
change the sheet labels.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from riemann_bands.obc.arcs import EndpointKind, SpectralArc
from riemann_bands.riemann.monodromy import LoopWord, MonodromyRep, loop_word
from riemann_bands.riemann.permutations import Permutation
from riemann_bands.riemann.tracking import polyline_distance

logger = logging.getLogger(__name__)

CAP_SAMPLES = 16


@dataclass(frozen=True)
class CutVerdict:
    """Result for one candidate cut; ``group`` holds indices into ``rep.points``."""

    group: tuple[int, ...]
    word: LoopWord
    permutation: Permutation
    consistent: bool


def _tangents(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    seg = np.diff(pts)
    seg = seg / np.abs(seg)
    vertex = np.empty(len(pts), dtype=complex)
    vertex[0], vertex[-1] = seg[0], seg[-1]
    if len(pts) > 2:
        mid = seg[:-1] + seg[1:]
        vertex[1:-1] = mid / np.abs(mid)
    return seg, vertex


def hugging_loop(cut, width: float) -> np.ndarray:
    """Closed counterclockwise polyline at distance ``width`` around an open cut.

    The loop runs along the right side of the cut, turns around its end,
    comes back along the left side and turns around its start.
    """
    pts = np.asarray(cut, dtype=complex)
    _, tangent = _tangents(pts)
    normal = 1j * tangent
    right = pts - width * normal
    left = pts + width * normal

    def cap(center: complex, t: complex, start: float) -> np.ndarray:
        angles = np.angle(t) + start + np.pi * np.arange(1, CAP_SAMPLES) / CAP_SAMPLES
        return center + width * np.exp(1j * angles)

    loop = np.concatenate(
        [
            right,
            cap(pts[-1], tangent[-1], -np.pi / 2),
            left[::-1],
            cap(pts[0], tangent[0], np.pi / 2),
            right[:1],
        ]
    )
    return loop


def _clear_width(cut: np.ndarray, rep: MonodromyRep, group: tuple[int, ...]) -> float:
    others = [p.location for k, p in enumerate(rep.points) if k not in group]
    spans = np.abs(np.diff(cut))
    limit = 0.25 * float(spans.min())
    if others:
        limit = min(limit, 0.25 * min(polyline_distance(cut, o) for o in others))
    return limit


def cut_consistency(
    groups,
    rep: MonodromyRep,
    polylines=None,
) -> list[CutVerdict]:
    """Check candidate cuts against the monodromy.

    Parameters
    ----------
    groups : sequence of sequence of int
        Special-point indices (positions in ``rep.points``) bounding each cut.
    rep : MonodromyRep
        Monodromy with permutations.
    polylines : sequence of array_like, optional
        Explicit cut shapes, one per group. By default a cut runs straight
        through the group's points in the given order.

    Returns
    -------
    list[CutVerdict]
        One verdict per group; ``consistent`` when the hugging loop has
        trivial monodromy.

    Examples
    --------
    A pair of points carrying the same transposition bounds an admissible
    cut::

        verdicts = cut_consistency([(0, 1)], rep)
        verdicts[0].consistent
    """
    verdicts = []
    for k, group in enumerate(groups):
        group = tuple(int(g) for g in group)
        if polylines is not None and polylines[k] is not None:
            cut = np.asarray(polylines[k], dtype=complex)
        else:
            cut = np.array([rep.points[g].location for g in group], dtype=complex)
        if len(cut) < 2:
            raise ValueError(f"Cut for group {group} needs at least two vertices")
        width = _clear_width(cut, rep, group)
        word = loop_word(hugging_loop(cut, width), rep)
        verdict = CutVerdict(group, word, word.permutation, word.permutation.is_identity)
        logger.info(
            "Cut %s: %s -> %s (%s)",
            [g + 1 for g in group],
            word.notation(),
            word.permutation,
            "consistent" if verdict.consistent else "inconsistent",
        )
        verdicts.append(verdict)
    return verdicts


def cut_groups(arcs: list[SpectralArc], tol: float = 1e-9) -> list[tuple[int, ...]]:
    """Branch-point groups bounded by each connected piece of the spectrum.

    Arcs meeting at a junction form one piece. Indices refer to the
    branch-point list the arcs were assembled against; pieces touching no
    branch point are skipped.
    """
    parent = list(range(len(arcs)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    junctions = []
    for k, arc in enumerate(arcs):
        for end, sample in zip(arc.endpoints, (arc.samples[0], arc.samples[-1])):
            if end.kind is EndpointKind.JUNCTION:
                junctions.append((k, sample))
    for i, (a, sa) in enumerate(junctions):
        for b, sb in junctions[i + 1 :]:
            if abs(sa - sb) <= tol * max(1.0, abs(sa)):
                parent[find(a)] = find(b)

    pieces: dict[int, set[int]] = {}
    for k, arc in enumerate(arcs):
        pieces.setdefault(find(k), set()).update(arc.branch_indices())
    groups = [tuple(sorted(g)) for g in pieces.values() if g]
    return sorted(groups)
