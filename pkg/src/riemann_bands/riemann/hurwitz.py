"""Hurwitz moves and Riemann–Hurwitz genus accounting."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum

from riemann_bands.errors import (
    DisconnectedMonodromy,
    InconsistentMonodromy,
    NonIntegerGenus,
    NotAdjacent,
)
from riemann_bands.riemann.monodromy import MonodromyRep, check_connectedness, check_consistency

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    CCW = "ccw"
    CW = "cw"


@dataclass(frozen=True)
class HurwitzReport:
    """Ramification data and genus of one projection.

    ``ramification`` lists ``(location, cycle type)``; the point at infinity
    has location ``None``. ``n_bp`` is ``Σ (k_P − 1)`` over all points.
    """

    d: int
    ramification: list[tuple[complex | None, tuple[int, ...]]]
    genus: int
    n_bp: int


def hurwitz_move(rep: MonodromyRep, i: int, direction: Direction | str = Direction.CCW) -> MonodromyRep:
    """Exchange the special points at angular positions ``i`` and ``i + 1``.

    The points trade locations. Counterclockwise, the point arriving at
    position ``i`` keeps its label ``π_{i+1}`` and the one moving to
    ``i + 1`` becomes ``π_{i+1}⁻¹ π_i π_{i+1}``. Clockwise, position ``i``
    gets ``π_i π_{i+1} π_i⁻¹`` and position ``i + 1`` keeps ``π_i``. The
    ordered product, and hence the permutation at infinity, is unchanged.

    Raises
    ------
    NotAdjacent
        If ``i`` and ``i + 1`` are not both valid positions.
    """
    direction = Direction(direction)
    n = len(rep.points)
    if not 0 <= i <= n - 2:
        raise NotAdjacent(f"Positions {i} and {i + 1} are not adjacent among {n} points")
    a, b = rep.points[i], rep.points[i + 1]
    pa, pb = a.permutation, b.permutation
    if direction is Direction.CCW:
        new_i = replace(b, location=a.location, permutation=pb)
        new_next = replace(a, location=b.location, permutation=pa.conjugate_by(pb))
    else:
        new_i = replace(b, location=a.location, permutation=pb.conjugate_by(pa.inverse()))
        new_next = replace(a, location=b.location, permutation=pa)
    points = list(rep.points)
    points[i], points[i + 1] = new_i, new_next
    logger.debug("Hurwitz move %s at %d: %s, %s", direction.value, i, new_i.permutation, new_next.permutation)
    return replace(rep, points=tuple(points), loops=())


def riemann_hurwitz(rep: MonodromyRep) -> HurwitzReport:
    """Genus from ``Σ (k_P − 1) = 2g + 2d − 2`` over finite points and infinity.

    The count only holds for a consistent, connected representation, so
    both are checked first.

    Raises
    ------
    InconsistentMonodromy
        If the finite product times ``infinity_perm`` is not the identity.
    DisconnectedMonodromy
        If the monodromy group is not transitive.
    NonIntegerGenus
        If the count gives an odd or negative ``2g``.
    """
    consistent, inferred = check_consistency(rep)
    if not consistent:
        raise InconsistentMonodromy(
            f"Permutation at infinity {rep.infinity_perm} differs from the inferred {inferred}"
        )
    if not check_connectedness(rep):
        raise DisconnectedMonodromy(
            f"Monodromy group on the {rep.plane.value} plane is not transitive on {rep.d} labels"
        )
    ramification: list[tuple[complex | None, tuple[int, ...]]] = []
    total = 0
    for p in rep.points:
        ramification.append((p.location, p.permutation.cycle_type()))
        total += p.permutation.ramification()
    ramification.append((None, rep.infinity_perm.cycle_type()))
    total += rep.infinity_perm.ramification()

    twice_genus = total - 2 * rep.d + 2
    if twice_genus < 0 or twice_genus % 2:
        raise NonIntegerGenus(
            f"Ramification sum {total} with d={rep.d} gives genus {twice_genus / 2}"
        )
    genus = twice_genus // 2
    logger.info("Riemann-Hurwitz on %s plane: d=%d, N_bp=%d, g=%d", rep.plane.value, rep.d, total, genus)
    return HurwitzReport(d=rep.d, ramification=ramification, genus=genus, n_bp=total)
