"""Branch points, based loops and monodromy representations.

Special points of a projection are the discriminant roots (branch points)
and the zeros of the leading coefficient in the fiber variable (poles,
where fiber roots escape to infinity). Each one gets a based loop: a
straight segment from the base point, a small counterclockwise circle and
the same segment back. Loops are listed by ``arg(location − base)`` in
``(−π, π]``, ascending; with that order the product of all finite
permutations, followed by the permutation at infinity, is the identity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from tqdm import tqdm

from riemann_bands.errors import (
    BaseOnBranchCutDegenerate,
    DisconnectedMonodromy,
    NonSquareFreeDiscriminant,
    PathTooCloseToBranchPoint,
    TrackingAmbiguity,
)
from riemann_bands.polyalg import BiPoly, Plane, all_roots, cluster_roots, discriminant
from riemann_bands.polyalg.univariate import canonical_order, sort_canonical
from riemann_bands.riemann.permutations import Permutation, is_transitive, product
from riemann_bands.riemann.tracking import (
    FiberTracker,
    match_fibers,
    min_pairwise,
    polyline_distance,
)

logger = logging.getLogger(__name__)

LOOP_SAMPLES = 64
POLE_MATCH_TOL = 1e-6
MAX_BASE_RETRIES = 20
BASE_ROTATION = 1e-3
# segment clearance in units of the target's loop radius
FULL_CLEARANCE = 1.0
TRACK_CLEARANCE = 0.25
BASE_SCAN_RADII = (0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.25)
BASE_SCAN_ANGLES = 48


class PointKind(str, Enum):
    """Why a point of the base plane is special."""

    BRANCH = "branch"
    POLE = "pole"


@dataclass(frozen=True)
class BranchPoint:
    """Special point of one projection.

    Parameters
    ----------
    location : complex
        Position in ``plane``.
    plane : Plane
        Plane the point lives in.
    kind : PointKind
        Discriminant root (``BRANCH``) or zero of the fiber leading
        coefficient (``POLE``).
    multiplicity : int
        Size of the discriminant (or leading-coefficient) root cluster.
    permutation : Permutation or None
        Monodromy of the based loop, once computed.
    """

    location: complex
    plane: Plane
    kind: PointKind = PointKind.BRANCH
    multiplicity: int = 1
    permutation: Permutation | None = None

    @property
    def cycle_type(self) -> tuple[int, ...] | None:
        return None if self.permutation is None else self.permutation.cycle_type()

    def with_permutation(self, permutation: Permutation) -> BranchPoint:
        return replace(self, permutation=permutation)


@dataclass(frozen=True)
class BasedLoop:
    """Straight segment, counterclockwise circle of radius ``epsilon``, segment back."""

    base: complex
    target: complex
    epsilon: float
    samples: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MonodromyRep:
    """Monodromy representation of one projection.

    ``points`` are in ascending ``arg(location − base)`` order and all carry
    their permutation. Fiber labels ``0..d−1`` index ``fiber``.
    """

    plane: Plane
    base: complex
    fiber: np.ndarray
    points: tuple[BranchPoint, ...]
    infinity_perm: Permutation
    loops: tuple[BasedLoop, ...] = field(default=(), repr=False)

    @property
    def d(self) -> int:
        return len(self.fiber)

    @property
    def perms(self) -> list[Permutation]:
        return [p.permutation for p in self.points]

    @property
    def branch(self) -> list[BranchPoint]:
        return [p for p in self.points if p.kind is PointKind.BRANCH]

    @property
    def poles(self) -> list[BranchPoint]:
        return [p for p in self.points if p.kind is PointKind.POLE]

    def index_of(self, location: complex) -> int:
        """Position of the special point nearest ``location``."""
        return int(np.argmin([abs(p.location - location) for p in self.points]))

    def with_perms(self, perms: list[Permutation], infinity: Permutation | None = None) -> MonodromyRep:
        points = tuple(p.with_permutation(q) for p, q in zip(self.points, perms))
        return replace(
            self,
            points=points,
            infinity_perm=self.infinity_perm if infinity is None else infinity,
        )


# ---------------------------------------------------------------------------
# Special points
# ---------------------------------------------------------------------------


def _scale(values) -> float:
    v = np.asarray(values, dtype=complex)
    return max(1.0, float(np.max(np.abs(v)))) if v.size else 1.0


def special_points(
    f: BiPoly,
    plane: Plane = Plane.OMEGA,
    strict: bool = True,
    root_tol: float = 1e-8,
    cluster_tol: float = 1e-7,
) -> list[BranchPoint]:
    """Branch points and poles of the projection onto ``plane``.

    Parameters
    ----------
    f : BiPoly
        The curve.
    plane : Plane
        Projection plane.
    strict : bool
        Reject repeated discriminant roots away from poles.
    root_tol, cluster_tol : float
        Root residual and clustering tolerances.

    Returns
    -------
    list[BranchPoint]
        Poles and branch points, sorted by ``(|x|, arg x)``, without
        permutations.

    Raises
    ------
    NonSquareFreeDiscriminant
        If ``strict`` and a discriminant root is repeated.
    """
    plane = Plane(plane)
    fiber_var = plane.other

    poles: list[BranchPoint] = []
    lead = f.leading(fiber_var)
    if lead.degree >= 1:
        for loc, mult in cluster_roots(all_roots(lead, tol=root_tol), tol=cluster_tol):
            poles.append(BranchPoint(loc, plane, PointKind.POLE, mult))

    branch: list[BranchPoint] = []
    if f.degree(fiber_var) >= 2:
        disc = discriminant(f, wrt=fiber_var)
        if disc.degree >= 1:
            roots = all_roots(disc, tol=root_tol)
            clusters = cluster_roots(roots, tol=cluster_tol)
            scale = _scale(roots)
            for loc, mult in clusters:
                if any(abs(loc - p.location) <= POLE_MATCH_TOL * scale for p in poles):
                    continue
                if mult > 1:
                    if strict:
                        raise NonSquareFreeDiscriminant(
                            f"Discriminant root {loc:.6g} in the {plane.value} plane has "
                            f"multiplicity {mult}; the curve is non-generic"
                        )
                    logger.warning(
                        "Repeated discriminant root %s (multiplicity %d) kept", loc, mult
                    )
                branch.append(BranchPoint(loc, plane, PointKind.BRANCH, mult))

    points = poles + branch
    order = canonical_order([p.location for p in points])
    out = [points[i] for i in order]
    logger.info(
        "%s plane: %d branch points, %d poles", plane.value, len(branch), len(poles)
    )
    return out


def branch_points(
    f: BiPoly,
    plane: Plane = Plane.OMEGA,
    strict: bool = True,
    root_tol: float = 1e-8,
    cluster_tol: float = 1e-7,
) -> list[BranchPoint]:
    """Deduplicated discriminant roots of the projection onto ``plane``.

    ``plane=OMEGA`` uses the discriminant with respect to z, ``plane=Z`` the
    one with respect to ω. Roots sitting on poles are not branch points.

    Examples
    --------
    >>> from riemann_bands.lattice import BlochHamiltonian, char_poly
    >>> f = char_poly(BlochHamiltonian.ssh(2.0, 1.0))
    >>> sorted(round(bp.location.real) for bp in branch_points(f))
    [-3, -1, 1, 3]
    """
    return [
        p
        for p in special_points(f, plane, strict, root_tol, cluster_tol)
        if p.kind is PointKind.BRANCH
    ]


# ---------------------------------------------------------------------------
# Based loops
# ---------------------------------------------------------------------------


def _angular_key(location: complex, base: complex) -> float:
    angle = float(np.angle(location - base))
    return np.pi if angle < -np.pi + 1e-9 else angle


def _radii(locations: list[complex]) -> list[float]:
    """Quarter of the distance to the nearest other special point."""
    out = []
    for i, loc in enumerate(locations):
        others = [abs(loc - o) for j, o in enumerate(locations) if j != i]
        out.append(0.25 * min(others) if others else 0.25 * max(1.0, abs(loc)))
    return out


def based_loop(base: complex, target: complex, epsilon: float, samples: int = LOOP_SAMPLES) -> BasedLoop:
    """Polyline of the based loop around ``target``."""
    direction = (target - base) / abs(target - base)
    entry = target - epsilon * direction
    start_angle = np.angle(-direction)
    angles = start_angle + 2 * np.pi * np.arange(1, samples + 1) / samples
    circle = target + epsilon * np.exp(1j * angles)
    circle[-1] = entry
    path = np.concatenate([[base, entry], circle, [base]])
    return BasedLoop(base=base, target=target, epsilon=epsilon, samples=path)


def _loop_radii(base: complex, locs: np.ndarray, radii: np.ndarray) -> np.ndarray:
    return np.minimum(radii, 0.5 * np.abs(locs - base))


def loop_clearance(base: complex, locations, radii) -> float:
    """Closest approach of a based-loop segment to another special point.

    Measured for each target in units of that target's loop radius; the
    minimum over all targets is returned. Zero if ``base`` sits on a point.
    """
    locs = np.asarray(locations, dtype=complex)
    if len(locs) < 2:
        return np.inf if len(locs) == 0 or locs[0] != base else 0.0
    offset = locs - base
    dist = np.abs(offset)
    if np.any(dist == 0):
        return 0.0
    eps = _loop_radii(base, locs, np.asarray(radii, dtype=float))
    seg = offset - eps * offset / dist
    # rows: target i, columns: other point j
    t = (offset[None, :] * np.conj(seg)[:, None]).real / (np.abs(seg) ** 2)[:, None]
    gap = np.abs(offset[None, :] - np.clip(t, 0.0, 1.0) * seg[:, None])
    np.fill_diagonal(gap, np.inf)
    return float(np.min(gap / eps[:, None]))


def _loops_for(
    base: complex, locations: list[complex], radii: list[float], needed: float = FULL_CLEARANCE
) -> list[BasedLoop] | None:
    """Based loops for every point, or ``None`` if a segment violates clearance."""
    if loop_clearance(base, locations, radii) < needed:
        return None
    eps = _loop_radii(base, np.asarray(locations, dtype=complex), np.asarray(radii, dtype=float))
    return [based_loop(base, loc, float(e)) for loc, e in zip(locations, eps)]


def _scan_candidates(locations: list[complex]) -> list[complex]:
    centroid = complex(np.mean(locations))
    spread = max(abs(loc - centroid) for loc in locations) or 1.0
    angles = 2 * np.pi * (np.arange(BASE_SCAN_ANGLES) + 0.37) / BASE_SCAN_ANGLES
    return [
        complex(centroid + rho * spread * np.exp(1j * a)) for rho in BASE_SCAN_RADII for a in angles
    ]


def _default_base(locations: list[complex], radii: list[float]) -> complex:
    if not locations:
        return 0j
    centroid = complex(np.mean(locations))
    spread = max(abs(loc - centroid) for loc in locations) or 1.0
    candidates = [centroid] + [
        centroid + 0.5 * spread * np.exp(1j * (0.3 + 0.7 * k)) for k in range(16)
    ]
    for c in candidates:
        if all(abs(c - loc) >= 2 * eps for loc, eps in zip(locations, radii)):
            return complex(c)
    return complex(candidates[-1])


def _place_loops(
    base: complex, locations: list[complex], radii: list[float], search: bool = False
) -> tuple[complex, list[BasedLoop]]:
    """Loops from ``base``, rotating the base about the centroid when segments crowd other points.

    Each retry rotates by ``BASE_ROTATION`` radians more. With ``search``
    (no base requested by the caller) a fixed grid of bases around the
    centroid is scanned next and the one with the largest clearance is
    taken, provided segments keep the tracking clearance.
    """
    centroid = complex(np.mean(locations))
    for k in range(MAX_BASE_RETRIES + 1):
        candidate = complex(centroid + (base - centroid) * np.exp(1j * k * BASE_ROTATION))
        loops = _loops_for(candidate, locations, radii)
        if loops is not None:
            if k:
                logger.debug("Base point moved %s -> %s after %d rotations", base, candidate, k)
            return candidate, loops
        if abs(base - centroid) < 1e-12 * _scale(locations):
            break
    if search:
        scored = [(loop_clearance(c, locations, radii), c) for c in _scan_candidates(locations)]
        best_score, best = max(scored, key=lambda item: item[0])
        loops = _loops_for(best, locations, radii, needed=TRACK_CLEARANCE)
        if loops is not None:
            logger.info("Base point %s chosen by scan (clearance %.2f of the loop radius)", best, best_score)
            return best, loops
    raise PathTooCloseToBranchPoint(
        f"No base point near {base:.6g} gives straight based loops clear of all special points"
    )


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------


def base_fiber(f: BiPoly, plane: Plane, base: complex, root_tol: float = 1e-8) -> np.ndarray:
    """Fiber over ``base`` in canonical order.

    Raises
    ------
    BaseOnBranchCutDegenerate
        If the fiber loses a root or has coincident entries.
    """
    plane = Plane(plane)
    d = f.degree(plane.other)
    poly = f.fiber_poly(plane, base)
    if poly.degree < d:
        raise BaseOnBranchCutDegenerate(f"Fiber over {base:.6g} loses roots to infinity")
    fiber = sort_canonical(all_roots(poly, tol=root_tol))
    if min_pairwise(fiber) < 1e-8 * _scale(fiber):
        raise BaseOnBranchCutDegenerate(f"Fiber over {base:.6g} has coincident entries")
    return fiber


def monodromy(
    f: BiPoly,
    base: complex | None = None,
    plane: Plane = Plane.OMEGA,
    strict: bool = True,
    progress: bool = False,
    root_tol: float = 1e-8,
    cluster_tol: float = 1e-7,
) -> MonodromyRep:
    """Monodromy representation of the projection onto ``plane``.

    Parameters
    ----------
    f : BiPoly
        The curve.
    base : complex, optional
        Base point, moved by up to ``MAX_BASE_RETRIES`` rotations of
        ``BASE_ROTATION`` radians about the centroid of the special points
        when a straight segment would pass within the target's loop radius
        of another special point. When omitted, a base near the centroid is
        tried first and then a scanned grid of bases.
    plane : Plane
        Projection plane.
    strict : bool
        Passed to :func:`special_points`.
    progress : bool
        Show a progress bar over based loops.
    root_tol, cluster_tol : float
        Passed to :func:`special_points` and :func:`base_fiber`.

    Returns
    -------
    MonodromyRep
        Consistent by construction (``infinity_perm`` is the inverse of the
        angular product) and checked for transitivity.

    Raises
    ------
    BaseOnBranchCutDegenerate
        If the fiber over the base point is degenerate.
    TrackingAmbiguity
        If a simple branch point yields the identity.
    DisconnectedMonodromy
        If the monodromy group is not transitive.
    """
    plane = Plane(plane)
    points = special_points(f, plane, strict=strict, root_tol=root_tol, cluster_tol=cluster_tol)
    locations = [p.location for p in points]
    radii = _radii(locations)
    search = base is None
    if base is None:
        base = _default_base(locations, radii)
    base = complex(base)

    if points:
        base, loops = _place_loops(base, locations, radii, search=search)
    else:
        loops = []
    fiber = base_fiber(f, plane, base, root_tol=root_tol)
    d = len(fiber)

    order = sorted(range(len(points)), key=lambda i: _angular_key(locations[i], base))
    tracker = FiberTracker(f, plane)
    ordered_points: list[BranchPoint] = []
    ordered_loops: list[BasedLoop] = []
    for i in tqdm(order, desc=f"{plane.value} loops", disable=not progress):
        point, loop = points[i], loops[i]
        end, _ = tracker.run(loop.samples, fiber)
        perm = match_fibers(end, fiber)
        if point.kind is PointKind.BRANCH and point.multiplicity == 1 and perm.is_identity:
            raise TrackingAmbiguity(
                f"Based loop around simple branch point {point.location:.6g} returned the identity"
            )
        ordered_points.append(point.with_permutation(perm))
        ordered_loops.append(loop)
        logger.debug("Loop around %s: %s", point.location, perm)

    total = product([p.permutation for p in ordered_points], d)
    rep = MonodromyRep(
        plane=plane,
        base=base,
        fiber=fiber,
        points=tuple(ordered_points),
        infinity_perm=total.inverse(),
        loops=tuple(ordered_loops),
    )
    if not check_connectedness(rep):
        raise DisconnectedMonodromy(
            f"Monodromy group on the {plane.value} plane is not transitive on {d} labels"
        )
    logger.info("Monodromy on %s plane: d=%d, %d loops", plane.value, d, len(ordered_points))
    return rep


def check_consistency(rep: MonodromyRep) -> tuple[bool, Permutation]:
    """Infer the permutation at infinity and compare with the stored one."""
    inferred = product(rep.perms, rep.d).inverse()
    return inferred == rep.infinity_perm, inferred


def check_connectedness(rep: MonodromyRep) -> bool:
    return is_transitive(rep.perms + [rep.infinity_perm], rep.d)


# ---------------------------------------------------------------------------
# Loop words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LoopWord:
    """A closed loop written in based loops.

    ``letters`` holds ``(point index, ±1)`` in traversal order; ``+1`` is the
    based loop, ``−1`` its inverse.
    """

    letters: tuple[tuple[int, int], ...]
    permutation: Permutation

    def notation(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            f"pi{i + 1}" if s > 0 else f"pi{i + 1}^-1" for i, s in self.letters
        )


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def loop_word(polyline, rep: MonodromyRep, clearance: float = 1e-9) -> LoopWord:
    """Decompose a closed loop into based loops of ``rep``.

    Each special point carries a cut along the ray from the point directly
    away from the base. Crossing that ray counterclockwise about the point
    contributes its based loop; crossing it clockwise contributes the
    inverse.

    Raises
    ------
    PathTooCloseToBranchPoint
        If the loop passes within ``clearance`` of a special point.
    """
    pts = np.asarray(polyline, dtype=complex)
    if abs(pts[-1] - pts[0]) > 1e-12 * _scale(pts):
        pts = np.append(pts, pts[0])
    scale = _scale([p.location for p in rep.points] + [rep.base])
    for p in rep.points:
        if polyline_distance(pts, p.location) < clearance * scale:
            raise PathTooCloseToBranchPoint(f"Loop passes through special point {p.location:.6g}")

    rays = [
        (p.location, (p.location - rep.base) / abs(p.location - rep.base)) for p in rep.points
    ]
    letters: list[tuple[int, int]] = []
    for a, b in zip(pts[:-1], pts[1:]):
        e = b - a
        hits = []
        for k, (origin, d) in enumerate(rays):
            denom = _cross(d, e)
            if denom == 0:
                continue
            s = _cross(origin - a, d) / _cross(e, d)
            t = _cross(a - origin, e) / denom
            if 0.0 <= s < 1.0 and t >= 0.0:
                hits.append((s, k, 1 if denom > 0 else -1))
        for _, k, sign in sorted(hits):
            letters.append((k, sign))

    perms = [
        rep.points[k].permutation if sign > 0 else rep.points[k].permutation.inverse()
        for k, sign in letters
    ]
    return LoopWord(letters=tuple(letters), permutation=product(perms, rep.d))
