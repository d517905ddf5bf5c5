"""Branch points, monodromy and Riemann–Hurwitz accounting for band curves."""

from riemann_bands.riemann.hurwitz import Direction, HurwitzReport, hurwitz_move, riemann_hurwitz
from riemann_bands.riemann.monodromy import (
    BasedLoop,
    BranchPoint,
    LoopWord,
    MonodromyRep,
    PointKind,
    base_fiber,
    based_loop,
    branch_points,
    check_connectedness,
    check_consistency,
    loop_word,
    monodromy,
    special_points,
)
from riemann_bands.riemann.permutations import (
    Permutation,
    equivalent_up_to_relabeling,
    is_transitive,
    product,
)
from riemann_bands.riemann.tracking import FiberTracker, track_fiber

__all__ = [
    "BasedLoop",
    "BranchPoint",
    "Direction",
    "FiberTracker",
    "HurwitzReport",
    "LoopWord",
    "MonodromyRep",
    "Permutation",
    "PointKind",
    "base_fiber",
    "based_loop",
    "branch_points",
    "check_connectedness",
    "check_consistency",
    "equivalent_up_to_relabeling",
    "hurwitz_move",
    "is_transitive",
    "loop_word",
    "monodromy",
    "product",
    "riemann_hurwitz",
    "special_points",
    "track_fiber",
]
