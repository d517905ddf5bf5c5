"""Analytic continuation of root fibers along polylines.

A tangent predictor followed by a Newton corrector advances the whole
fiber at once. A step is accepted only when every root moves by less than
a third of the smallest pairwise distance in the fiber, so roots cannot
trade places within a step; otherwise the step is halved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import linear_sum_assignment

from riemann_bands.errors import PathTooCloseToBranchPoint, TrackingAmbiguity
from riemann_bands.polyalg import BiPoly, Plane
from riemann_bands.riemann.permutations import Permutation

logger = logging.getLogger(__name__)

_NEWTON_ITERS = 8
_NEWTON_TOL = 1e-13
_MIN_STEP = 1e-12
_COLLISION_TOL = 1e-10

StepFilter = Callable[[np.ndarray, np.ndarray], bool]


@dataclass
class FiberTrace:
    """Accepted continuation steps.

    ``params`` is the cumulative polyline parameter (vertex ``k`` sits at
    ``k``), ``points`` the base-variable positions and ``fibers`` the fiber
    at each accepted step, one row per step.
    """

    params: list[float] = field(default_factory=list)
    points: list[complex] = field(default_factory=list)
    fibers: list[np.ndarray] = field(default_factory=list)

    def append(self, param: float, point: complex, fiber: np.ndarray) -> None:
        self.params.append(param)
        self.points.append(point)
        self.fibers.append(fiber.copy())

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.array(self.params), np.array(self.points), np.array(self.fibers)


def min_pairwise(values: np.ndarray) -> float:
    if len(values) < 2:
        return np.inf
    diff = np.abs(values[:, None] - values[None, :])
    diff[np.diag_indices(len(values))] = np.inf
    return float(diff.min())


def segment_distance(a: complex, b: complex, p: complex) -> float:
    """Distance from ``p`` to the segment ``[a, b]``."""
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * np.conj(d)).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def polyline_distance(path, p: complex) -> float:
    pts = np.asarray(path, dtype=complex)
    if len(pts) == 1:
        return abs(pts[0] - p)
    return min(segment_distance(a, b, p) for a, b in zip(pts[:-1], pts[1:]))


class FiberTracker:
    """Continues the fiber of a curve over one plane.

    Parameters
    ----------
    f : BiPoly
        The curve.
    plane : Plane
        Plane the path lives in; the fiber lives in the other variable.
    """

    def __init__(self, f: BiPoly, plane: Plane) -> None:
        self.f = f
        self.plane = Plane(plane)
        rows = f.fiber_coeff_matrix(self.plane)
        # rows[k] is the coefficient of y^k as a polynomial in the base variable x
        self._rows = rows
        self._drows_x = P.polyder(rows, axis=1) if rows.shape[1] > 1 else np.zeros_like(rows)

    # ------------------------------------------------------------------ #
    # Local algebra
    # ------------------------------------------------------------------ #

    def fiber_coeffs(self, x: complex) -> np.ndarray:
        """Coefficients in the fiber variable at base point ``x``."""
        return P.polyval(x, self._rows.T)

    def _dx_coeffs(self, x: complex) -> np.ndarray:
        return P.polyval(x, self._drows_x.T)

    def residual(self, x: complex, fiber: np.ndarray) -> np.ndarray:
        c = self.fiber_coeffs(x)
        scale = P.polyval(np.abs(fiber), np.abs(c))
        return np.abs(P.polyval(fiber, c)) / np.maximum(scale, 1e-300)

    def _newton(self, x: complex, y: np.ndarray) -> tuple[np.ndarray, bool]:
        c = self.fiber_coeffs(x)
        dc = P.polyder(c)
        for _ in range(_NEWTON_ITERS):
            g = P.polyval(y, c)
            dg = P.polyval(y, dc)
            if np.any(dg == 0):
                return y, False
            delta = g / dg
            y = y - delta
            if np.all(np.abs(delta) <= _NEWTON_TOL * (1.0 + np.abs(y))):
                return y, True
        return y, bool(np.all(self.residual(x, y) < 1e-10))

    def _tangent(self, x: complex, y: np.ndarray) -> np.ndarray:
        c = self.fiber_coeffs(x)
        fy = P.polyval(y, P.polyder(c))
        fx = P.polyval(y, self._dx_coeffs(x))
        with np.errstate(divide="ignore", invalid="ignore"):
            t = -fx / fy
        return np.where(np.isfinite(t), t, 0.0)

    # ------------------------------------------------------------------ #
    # Continuation
    # ------------------------------------------------------------------ #

    def run(
        self,
        path,
        fiber,
        accept: StepFilter | None = None,
        record: bool = False,
    ) -> tuple[np.ndarray, FiberTrace | None]:
        """Continue ``fiber`` along the polyline ``path``.

        Parameters
        ----------
        path : array_like of complex
            Polyline vertices in the base plane.
        fiber : array_like of complex
            Fiber over ``path[0]``; its order is carried along.
        accept : callable, optional
            Extra step filter ``accept(old, new) -> bool``. When step halving
            is exhausted and only this filter objects, the step is taken.
        record : bool
            Keep every accepted step in a :class:`FiberTrace`.

        Returns
        -------
        tuple[np.ndarray, FiberTrace or None]
            End fiber (same order as ``fiber``) and the optional trace.

        Raises
        ------
        PathTooCloseToBranchPoint
            If two fiber entries nearly coincide along the path.
        TrackingAmbiguity
            If step halving is exhausted.
        """
        pts = np.asarray(path, dtype=complex)
        y = np.asarray(fiber, dtype=complex).copy()
        trace = FiberTrace() if record else None
        if trace is not None:
            trace.append(0.0, complex(pts[0]), y)

        h = 0.125
        for k, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
            length = abs(b - a)
            if length == 0:
                continue
            t = 0.0
            while t < 1.0:
                h = min(h, 1.0 - t)
                x0 = a + t * (b - a)
                x1 = a + (t + h) * (b - a)
                delta = min_pairwise(y)
                if delta < _COLLISION_TOL * (1.0 + float(np.max(np.abs(y)))):
                    raise PathTooCloseToBranchPoint(
                        f"Fiber entries collide near {complex(x0):.6g} "
                        f"(separation {delta:.2e})"
                    )
                pred = y + (x1 - x0) * self._tangent(x0, y)
                new, converged = self._newton(x1, pred)
                moved = float(np.max(np.abs(new - y)))
                drift = float(np.max(np.abs(new - pred)))
                geometric_ok = converged and moved < delta / 3 and drift < delta / 4
                filter_ok = accept is None or accept(y, new)
                if geometric_ok and filter_ok:
                    y = new
                    t += h
                    if trace is not None:
                        trace.append(k + t, complex(x1), y)
                    h = min(2.0 * h, 1.0)
                    continue
                if h * length < _MIN_STEP * (1.0 + abs(x0)):
                    if geometric_ok:
                        logger.debug("Step filter overridden at minimal step near %s", x0)
                        y = new
                        t += h
                        if trace is not None:
                            trace.append(k + t, complex(x1), y)
                        continue
                    raise TrackingAmbiguity(
                        f"Step halving exhausted near {complex(x0):.6g} on {self.plane.value} plane"
                    )
                h /= 2.0
            # restart each segment with a length-relative step
            h = min(1.0, max(h, 0.125))
        return y, trace


def match_fibers(end: np.ndarray, reference: np.ndarray) -> Permutation:
    """Permutation sending index ``α`` to the index of ``reference`` that ``end[α]`` lands on.

    Raises
    ------
    TrackingAmbiguity
        If some entry lands farther than a third of the reference separation.
    """
    cost = np.abs(end[:, None] - reference[None, :])
    rows, cols = linear_sum_assignment(cost)
    images = [0] * len(end)
    for i, j in zip(rows, cols):
        images[i] = int(j)
    worst = float(cost[rows, cols].max()) if len(rows) else 0.0
    if worst > min_pairwise(reference) / 3:
        raise TrackingAmbiguity(f"End fiber does not match the reference (offset {worst:.2e})")
    return Permutation(tuple(images))


def track_fiber(
    f: BiPoly,
    path,
    start_fiber,
    plane: Plane = Plane.OMEGA,
    special_points=(),
    clearance: float = 0.0,
) -> tuple[np.ndarray, Permutation]:
    """Continue a fiber along a path and report the induced correspondence.

    Parameters
    ----------
    f : BiPoly
        The curve.
    path : array_like of complex
        Polyline in ``plane``.
    start_fiber : array_like of complex
        All fiber roots over ``path[0]``.
    plane : Plane
        Plane of the path.
    special_points : sequence of complex
        Points the path must keep ``clearance`` away from.
    clearance : float
        Required distance to ``special_points``.

    Returns
    -------
    tuple[np.ndarray, Permutation]
        End fiber in carried order, and the correspondence: for a closed
        path, ``α → β`` with ``end[α] = start[β]``; for an open path, the
        position of ``end[α]`` in the canonical sort of the end fiber.

    Raises
    ------
    ValueError
        If ``start_fiber`` does not solve the curve at ``path[0]``.
    PathTooCloseToBranchPoint
        If the path violates the clearance or the fiber collides.
    TrackingAmbiguity
        If step control fails.
    """
    from riemann_bands.polyalg.univariate import sort_canonical

    pts = np.asarray(path, dtype=complex)
    start = np.asarray(start_fiber, dtype=complex)
    tracker = FiberTracker(f, plane)
    if np.max(tracker.residual(pts[0], start)) > 1e-6:
        raise ValueError("start_fiber does not solve the curve at the path start")
    for p in special_points:
        if polyline_distance(pts, p) < clearance:
            raise PathTooCloseToBranchPoint(
                f"Path passes within {clearance:.3g} of special point {complex(p):.6g}"
            )
    end, _ = tracker.run(pts, start)
    closed = abs(pts[-1] - pts[0]) <= 1e-12 * (1.0 + abs(pts[0]))
    reference = start if closed else sort_canonical(end)
    return end, match_fibers(end, reference)
