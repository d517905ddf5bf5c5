"""Inverse design: place the six ω-plane branch points of a two-band curve.

With the gauge fixed by ``A₂ = anchor`` the six remaining complex
coefficients are fitted so that ``D_s / D₆`` equals the coefficients of
``∏ (ω − ω_k)``: twelve real residuals in twelve real unknowns, solved by
Levenberg–Marquardt from seeded random starts, plus starts restricted to
the coefficient subspaces fixed by the symmetries of the target.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import least_squares, linear_sum_assignment
from tqdm import tqdm

from riemann_bands.design.coefficients import (
    DEFAULT_ANCHOR,
    TwoBandCoefficients,
    branch_coefficients,
)
from riemann_bands.errors import ContinuationLost, NoSolutionFound
from riemann_bands.polyalg import UniPoly, all_roots

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
TARGET_TOL = 1e-8
FINAL_TOL = 1e-7
START_SCALE = 0.5
STEPS_PER_SIXTH_TURN = 64
MAX_SUBDIVISION = 4
CONTINUITY_FACTOR = 10.0

# unknowns in solver order; A2 is pinned by the gauge
_FREE = ("A0", "A1", "B0", "B1", "B2", "B3")
# their powers of ζ under TwoBandCoefficients.rotated
_ROTATION_POWERS = np.array([-2, -1, -3, -2, -1, 0])


@dataclass(frozen=True)
class DesignTarget:
    """Six distinct ω-plane branch-point locations and the gauge anchor for A₂."""

    targets: tuple[complex, ...]
    anchor: complex = DEFAULT_ANCHOR

    def __post_init__(self) -> None:
        t = tuple(complex(x) for x in self.targets)
        object.__setattr__(self, "targets", t)
        if len(t) != 6:
            raise ValueError(f"Need 6 branch-point targets, got {len(t)}")
        arr = np.array(t)
        gaps = np.abs(arr[:, None] - arr[None, :])
        gaps[np.diag_indices(6)] = np.inf
        if gaps.min() < 1e-9:
            raise ValueError("Branch-point targets must be pairwise distinct")
        if self.anchor == 0:
            raise ValueError("Gauge anchor must be nonzero")

    @classmethod
    def roots_of_unity(cls, anchor: complex = DEFAULT_ANCHOR) -> DesignTarget:
        return cls(tuple(np.exp(2j * np.pi * np.arange(1, 7) / 6)), anchor)

    def monic(self) -> np.ndarray:
        """Coefficients of ``∏ (ω − ω_k)``, constant first."""
        return P.polyfromroots(np.array(self.targets))


@dataclass(frozen=True)
class RestartDiagnostic:
    restart: int
    residual: float
    accepted: bool


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def _pack(c: TwoBandCoefficients) -> np.ndarray:
    v = np.array([getattr(c, n) for n in _FREE], dtype=complex)
    return np.concatenate([v.real, v.imag])


def _unpack(x: np.ndarray, anchor: complex) -> TwoBandCoefficients:
    v = x[:6] + 1j * x[6:]
    return TwoBandCoefficients(A0=v[0], A1=v[1], A2=anchor, B0=v[2], B1=v[3], B2=v[4], B3=v[5])


def _residual(x: np.ndarray, anchor: complex, monic: np.ndarray) -> np.ndarray:
    d = branch_coefficients(_unpack(x, anchor))
    if abs(d[6]) < 1e-300:
        return np.full(12, 1e6)
    r = d[:6] / d[6] - monic[:6]
    return np.concatenate([r.real, r.imag])


def _solve(x0: np.ndarray, anchor: complex, monic: np.ndarray):
    return least_squares(
        _residual,
        x0,
        args=(anchor, monic),
        method="lm",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=4000,
    )


def branch_locations(c: TwoBandCoefficients) -> np.ndarray:
    return all_roots(UniPoly.from_coeffs(branch_coefficients(c), tol=0.0))


def match_distance(found, targets) -> float:
    """Largest distance under the optimal one-to-one matching."""
    a = np.asarray(found, dtype=complex)
    b = np.asarray(targets, dtype=complex)
    if len(a) != len(b):
        return np.inf
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _accept(c: TwoBandCoefficients, target: DesignTarget, residual: float) -> bool:
    if residual >= RESIDUAL_TOL or c.B3 == 0:
        return False
    try:
        locs = branch_locations(c)
    except Exception:  # noqa: BLE001 - any root failure rejects the restart
        return False
    return match_distance(locs, target.targets) < TARGET_TOL


# ---------------------------------------------------------------------------
# Symmetry orbits and ordering
# ---------------------------------------------------------------------------


def _invariant(points: np.ndarray, mapped: np.ndarray) -> bool:
    return match_distance(mapped, points) < TARGET_TOL


def symmetric_masks(target: DesignTarget) -> list[np.ndarray]:
    """Masks over the packed unknowns selecting the coefficients a symmetric solution may keep.

    A rotation ``ζ`` fixing the target fixes a coefficient set only where
    ``ζ^power = 1``; with a conjugation-invariant target and a real anchor
    the imaginary parts may also be zeroed. Levenberg–Marquardt steps stay
    inside these subspaces.
    """
    pts = np.array(target.targets)
    masks = [np.ones(12, dtype=bool)]
    for k in range(1, 6):
        zeta = np.exp(2j * np.pi * k / 6)
        if _invariant(pts, pts / zeta):
            keep = np.abs(zeta**_ROTATION_POWERS - 1.0) < 1e-9
            masks.append(np.concatenate([keep, keep]))
    if _invariant(pts, np.conj(pts)) and complex(target.anchor).imag == 0:
        masks += [np.concatenate([m[:6], np.zeros(6, dtype=bool)]) for m in masks]
    unique: list[np.ndarray] = []
    for m in masks[1:]:
        if m.any() and not any(np.array_equal(m, u) for u in unique):
            unique.append(m)
    return unique


def symmetry_images(c: TwoBandCoefficients, target: DesignTarget) -> list[TwoBandCoefficients]:
    """Images of ``c`` under the sixfold rotations and conjugation that fix the target set."""
    pts = np.array(target.targets)
    rotations = [np.exp(2j * np.pi * k / 6) for k in range(6)]
    rotations = [z for z in rotations if _invariant(pts, pts / z)]
    images = [c.rotated(z) for z in rotations]
    if _invariant(pts, np.conj(pts)):
        images += [img.conjugated() for img in images]
    return [img.gauge_fixed(target.anchor) for img in images]


def _canonical_key(c: TwoBandCoefficients) -> tuple:
    v = c.as_vector()
    return tuple(np.round(v.real, 9)) + tuple(np.round(v.imag, 9))


def dedupe(solutions: list[TwoBandCoefficients], atol: float = 1e-7) -> list[TwoBandCoefficients]:
    out: list[TwoBandCoefficients] = []
    for s in solutions:
        if not any(s.allclose(o, atol) for o in out):
            out.append(s)
    return sorted(out, key=_canonical_key)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def solve_coefficients(
    target: DesignTarget,
    restarts: int = 200,
    seed: int = 7,
    progress: bool = False,
    diagnostics: list[RestartDiagnostic] | None = None,
) -> list[TwoBandCoefficients]:
    """Coefficient sets whose branch points sit on ``target``.

    Parameters
    ----------
    target : DesignTarget
        Six locations and the A₂ anchor.
    restarts : int
        Number of random starts. Targets with a rotation or conjugation
        symmetry get at least ``restarts // 2`` further starts inside the
        symmetric coefficient subspaces (see :func:`symmetric_masks`),
        drawn from a separate stream so the random starts do not change.
    seed : int
        Seed for ``numpy.random.default_rng``.
    progress : bool
        Show a progress bar over restarts.
    diagnostics : list, optional
        Receives one :class:`RestartDiagnostic` per start.

    Returns
    -------
    list[TwoBandCoefficients]
        Distinct gauge-fixed solutions, symmetry images included, in
        canonical order.

    Raises
    ------
    ValueError
        If ``restarts < 1``.
    NoSolutionFound
        If no restart converges.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be ≥ 1, got {restarts}")
    rng = np.random.default_rng(seed)
    masks = symmetric_masks(target)
    starts = [rng.normal(scale=START_SCALE, size=12) for _ in range(restarts)]
    if masks:
        structured = np.random.default_rng([seed, 1])
        n_structured = max(restarts // 2, 8 * len(masks))
        starts += [
            structured.normal(scale=START_SCALE, size=12) * masks[k % len(masks)]
            for k in range(n_structured)
        ]
    monic = target.monic()
    found: list[TwoBandCoefficients] = []
    for k, x0 in enumerate(tqdm(starts, desc="Design restarts", disable=not progress)):
        result = _solve(x0, target.anchor, monic)
        residual = float(np.linalg.norm(result.fun))
        c = _unpack(result.x, target.anchor)
        ok = _accept(c, target, residual)
        if diagnostics is not None:
            diagnostics.append(RestartDiagnostic(k, residual, ok))
        if ok:
            found.extend(symmetry_images(c, target))
    if not found:
        raise NoSolutionFound(f"None of {len(starts)} starts reached residual {RESIDUAL_TOL:g}")
    solutions = dedupe(found)
    logger.info("Design: %d distinct solutions from %d starts", len(solutions), len(starts))
    return solutions


def _resample(path, count: int) -> np.ndarray:
    """``count + 1`` points equally spaced in arclength along ``path``."""
    pts = np.asarray(path, dtype=complex)
    if len(pts) == 1:
        return np.full(count + 1, pts[0])
    seg = np.abs(np.diff(pts))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    if arc[-1] == 0:
        return np.full(count + 1, pts[0])
    s = np.linspace(0.0, arc[-1], count + 1)
    return np.interp(s, arc, pts.real) + 1j * np.interp(s, arc, pts.imag)


def exchange_paths(locations, i: int, j: int, direction: str = "ccw", samples: int = 65) -> list[np.ndarray]:
    """Paths swapping points ``i`` and ``j`` along a half turn about their midpoint.

    Every other point gets a constant path.
    """
    locs = np.asarray(locations, dtype=complex)
    if direction not in ("ccw", "cw"):
        raise ValueError(f"direction must be 'ccw' or 'cw', got {direction!r}")
    sign = 1.0 if direction == "ccw" else -1.0
    mid = 0.5 * (locs[i] + locs[j])
    turn = np.exp(1j * sign * np.pi * np.linspace(0.0, 1.0, samples))
    paths = [np.full(samples, loc) for loc in locs]
    paths[i] = mid + (locs[i] - mid) * turn
    paths[j] = mid + (locs[j] - mid) * turn
    paths[i][-1], paths[j][-1] = locs[j], locs[i]
    return paths


def deform_along_paths(
    start: TwoBandCoefficients,
    paths,
    steps: int | None = None,
    progress: bool = False,
) -> list[TwoBandCoefficients]:
    """Continue a solution while its branch points follow ``paths``.

    Parameters
    ----------
    start : TwoBandCoefficients
        Solution whose branch points are the path starts; its A₂ is kept.
    paths : sequence of array_like
        One polyline per branch point.
    steps : int, optional
        Step count; defaults to 64 per π/3 of the longest path.
    progress : bool
        Show a progress bar over steps.

    Returns
    -------
    list[TwoBandCoefficients]
        ``steps + 1`` coefficient sets, ``start`` first.

    Raises
    ------
    ValueError
        If the path starts are not the branch points of ``start``.
    ContinuationLost
        If a step fails to converge after subdivision, jumps far beyond the
        running step size, or the end does not reach the path ends.
    """
    paths = [np.atleast_1d(np.asarray(p, dtype=complex)) for p in paths]
    if len(paths) != 6:
        raise ValueError(f"Need 6 paths, got {len(paths)}")
    starts = np.array([p[0] for p in paths])
    if match_distance(branch_locations(start), starts) > 1e-6:
        raise ValueError("Path starts do not match the branch points of the start coefficients")
    if steps is None:
        longest = max(float(np.sum(np.abs(np.diff(p)))) for p in paths)
        steps = max(1, math.ceil(STEPS_PER_SIXTH_TURN * longest / (np.pi / 3)))
    grid = np.stack([_resample(p, steps) for p in paths], axis=1)
    anchor = start.A2

    def solve_to(x: np.ndarray, targets: np.ndarray, depth: int, prev: np.ndarray) -> np.ndarray:
        result = _solve(x, anchor, P.polyfromroots(targets))
        if np.linalg.norm(result.fun) < RESIDUAL_TOL:
            return result.x
        if depth >= MAX_SUBDIVISION:
            raise ContinuationLost(f"Deformation step failed to converge (residual {np.linalg.norm(result.fun):.2e})")
        mid = 0.5 * (prev + targets)
        x_mid = solve_to(x, mid, depth + 1, prev)
        return solve_to(x_mid, targets, depth + 1, mid)

    x = _pack(start)
    out = [start]
    jumps: list[float] = []
    for k in tqdm(range(1, steps + 1), desc="Deformation", disable=not progress):
        x_new = solve_to(x, grid[k], 0, grid[k - 1])
        jump = float(np.linalg.norm(x_new - x))
        if len(jumps) >= 3 and jump > CONTINUITY_FACTOR * float(np.median(jumps)) + 1e-9:
            raise ContinuationLost(f"Coefficient jump {jump:.3g} at step {k} of {steps}")
        jumps.append(jump)
        x = x_new
        out.append(_unpack(x, anchor))

    final = match_distance(branch_locations(out[-1]), grid[-1])
    if final > FINAL_TOL:
        raise ContinuationLost(f"Final branch points miss the path ends by {final:.2e}")
    logger.info("Deformation: %d steps, max jump %.3g", steps, max(jumps) if jumps else 0.0)
    return out
