"""Reconstruction of spectral arcs from unordered GBZ samples.

Samples are joined by a minimum spanning tree over a local-radius graph.
Short spurs are pruned and the tree is split at every node whose degree is
not 2; each piece becomes a :class:`SpectralArc`. Leaves near a branch
point are snapped onto it and nodes of degree ≥ 3 are junctions.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial import cKDTree

from riemann_bands.errors import FragmentedCurve
from riemann_bands.riemann.monodromy import BranchPoint

logger = logging.getLogger(__name__)

GAP_FACTOR = 10.0
JUNCTION_FACTOR = 3.0
SPUR_NODES = 2


class EndpointKind(str, Enum):
    BRANCH_POINT = "branch_point"
    JUNCTION = "junction"
    OPEN = "open"


@dataclass(frozen=True)
class Endpoint:
    kind: EndpointKind
    branch_index: int | None = None

    def label(self) -> str:
        if self.kind is EndpointKind.BRANCH_POINT:
            return f"bp{self.branch_index + 1}"
        return self.kind.value


@dataclass(frozen=True)
class SpectralArc:
    """One piece of the OBC spectrum.

    Parameters
    ----------
    samples : np.ndarray
        Ordered ω polyline, snapped branch points included.
    endpoints : tuple[Endpoint, Endpoint]
        Tags of the first and last sample.
    mu : int
        Boundary-condition index.
    """

    samples: np.ndarray
    endpoints: tuple[Endpoint, Endpoint]
    mu: int

    @property
    def length(self) -> float:
        return float(np.sum(np.abs(np.diff(self.samples))))

    def branch_indices(self) -> set[int]:
        return {e.branch_index for e in self.endpoints if e.kind is EndpointKind.BRANCH_POINT}


@dataclass(frozen=True)
class ObcSpectrum:
    """All arcs of one μ sector."""

    mu: int
    arcs: tuple[SpectralArc, ...]

    def to_frame(self) -> pd.DataFrame:
        """Long table with columns ``arc_id, re_omega, im_omega, mu``."""
        frames = [
            pd.DataFrame(
                {
                    "arc_id": k,
                    "re_omega": arc.samples.real,
                    "im_omega": arc.samples.imag,
                    "mu": self.mu,
                }
            )
            for k, arc in enumerate(self.arcs)
        ]
        if not frames:
            return pd.DataFrame(columns=["arc_id", "re_omega", "im_omega", "mu"])
        return pd.concat(frames, ignore_index=True)


# ---------------------------------------------------------------------------
# Graph construction
# ---------------------------------------------------------------------------


def _spanning_forest(points: np.ndarray, spacing: np.ndarray) -> dict[int, set[int]]:
    xy = np.column_stack([points.real, points.imag])
    tree = cKDTree(xy)
    pairs = tree.query_pairs(JUNCTION_FACTOR * float(spacing.max()), output_type="ndarray")
    if len(pairs):
        d = np.linalg.norm(xy[pairs[:, 0]] - xy[pairs[:, 1]], axis=1)
        keep = d <= JUNCTION_FACTOR * np.maximum(spacing[pairs[:, 0]], spacing[pairs[:, 1]])
        pairs, d = pairs[keep], d[keep]
    else:
        d = np.zeros(0)
    n = len(points)
    graph = coo_matrix((d, (pairs[:, 0], pairs[:, 1])), shape=(n, n)) if len(pairs) else coo_matrix((n, n))
    mst = minimum_spanning_tree(graph).tocoo()
    adjacency: dict[int, set[int]] = defaultdict(set)
    for i, j in zip(mst.row, mst.col):
        adjacency[int(i)].add(int(j))
        adjacency[int(j)].add(int(i))
    for i in range(n):
        adjacency.setdefault(i, set())
    return adjacency


def _prune_spurs(adjacency: dict[int, set[int]]) -> int:
    """Remove leaf chains of at most ``SPUR_NODES`` nodes hanging off a branching node."""
    removed = 0
    changed = True
    while changed:
        changed = False
        for leaf in [k for k, v in adjacency.items() if len(v) == 1]:
            if leaf not in adjacency or len(adjacency[leaf]) != 1:
                continue
            chain = [leaf]
            prev, node = leaf, next(iter(adjacency[leaf]))
            while len(adjacency[node]) == 2 and len(chain) <= SPUR_NODES:
                chain.append(node)
                prev, node = node, next(n for n in adjacency[node] if n != prev)
            if len(adjacency[node]) >= 3 and len(chain) <= SPUR_NODES:
                for c in chain:
                    for n in adjacency.pop(c):
                        if n in adjacency:
                            adjacency[n].discard(c)
                removed += len(chain)
                changed = True
    return removed


def _split_paths(adjacency: dict[int, set[int]]) -> list[list[int]]:
    breaks = {k for k, v in adjacency.items() if len(v) != 2}
    paths: list[list[int]] = []
    used: set[tuple[int, int]] = set()
    for start in sorted(breaks):
        for nxt in sorted(adjacency[start]):
            if (start, nxt) in used:
                continue
            path = [start, nxt]
            used.add((start, nxt))
            used.add((nxt, start))
            while path[-1] not in breaks:
                cur, prev = path[-1], path[-2]
                step = next(n for n in adjacency[cur] if n != prev)
                used.add((cur, step))
                used.add((step, cur))
                path.append(step)
            paths.append(path)
    # components that are closed loops have no break nodes
    seen = {n for p in paths for n in p} | breaks
    for start in sorted(adjacency):
        if start in seen or len(adjacency[start]) != 2:
            continue
        path = [start]
        prev, cur = start, min(adjacency[start])
        while cur != start:
            path.append(cur)
            prev, cur = cur, next(n for n in adjacency[cur] if n != prev)
        path.append(start)
        seen.update(path)
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def _snap_radius(spacing: float, bps: list[BranchPoint]) -> float:
    radius = GAP_FACTOR * spacing
    if len(bps) >= 2:
        locs = np.array([b.location for b in bps])
        diff = np.abs(locs[:, None] - locs[None, :])
        diff[np.diag_indices(len(locs))] = np.inf
        radius = min(radius, 0.25 * float(diff.min()))
    return radius


def assemble_arcs(points, bps: list[BranchPoint], mu: int = 1) -> list[SpectralArc]:
    """Join GBZ samples into arcs with tagged endpoints.

    Parameters
    ----------
    points : array_like of complex
        Rank-filtered GBZ samples.
    bps : list[BranchPoint]
        Branch points leaves may snap to; ``branch_index`` refers to this list.
    mu : int
        Boundary-condition index recorded on each arc.

    Returns
    -------
    list[SpectralArc]
        Arcs ordered by their first sample (``(|ω|, arg ω)``).

    Raises
    ------
    FragmentedCurve
        If a nearest-neighbour gap exceeds ten times the median gap.
    """
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 2:
        return []
    xy = np.column_stack([pts.real, pts.imag])
    dist, _ = cKDTree(xy).query(xy, k=2)
    spacing = dist[:, 1]
    median = float(np.median(spacing))
    if spacing.max() > GAP_FACTOR * median:
        raise FragmentedCurve(
            f"Largest sample gap {spacing.max():.3g} exceeds {GAP_FACTOR:g}× the median "
            f"{median:.3g}; raise theta_grid"
        )

    adjacency = _spanning_forest(pts, spacing)
    pruned = _prune_spurs(adjacency)
    if pruned:
        logger.debug("Pruned %d spur nodes", pruned)
    snap = _snap_radius(median, bps)
    bp_locs = np.array([b.location for b in bps], dtype=complex)

    def tag(node: int) -> tuple[Endpoint, complex | None]:
        degree = len(adjacency[node])
        if degree >= 3:
            return Endpoint(EndpointKind.JUNCTION), None
        if degree == 1 and len(bp_locs):
            gaps = np.abs(bp_locs - pts[node])
            k = int(np.argmin(gaps))
            if gaps[k] <= snap:
                return Endpoint(EndpointKind.BRANCH_POINT, k), complex(bp_locs[k])
        return Endpoint(EndpointKind.OPEN), None

    arcs = []
    for path in _split_paths(adjacency):
        samples = list(pts[path])
        closed = path[0] == path[-1]
        if closed:
            ends = (Endpoint(EndpointKind.OPEN), Endpoint(EndpointKind.OPEN))
        else:
            (head, head_loc), (tail, tail_loc) = tag(path[0]), tag(path[-1])
            if head_loc is not None:
                samples.insert(0, head_loc)
            if tail_loc is not None:
                samples.append(tail_loc)
            ends = (head, tail)
        arcs.append(SpectralArc(np.array(samples, dtype=complex), ends, mu))

    arcs.sort(key=lambda a: (abs(a.samples[0]), float(np.angle(a.samples[0]))))
    logger.info(
        "Assembled %d arcs (%d junction endpoints)",
        len(arcs),
        sum(e.kind is EndpointKind.JUNCTION for a in arcs for e in a.endpoints),
    )
    return arcs
