"""Winding numbers by argument accumulation."""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from riemann_bands.braid.loops import LoopSpec
from riemann_bands.errors import ZeroOnLoop
from riemann_bands.polyalg import BiPoly, Plane, discriminant

logger = logging.getLogger(__name__)

_MAX_DEPTH = 30
_ZERO_TOL = 1e-14


def winding_number(func: Callable, polyline) -> int:
    """Winding of ``func`` about 0 along a closed polyline.

    Each segment is bisected until consecutive values differ in argument by
    less than π/2.

    Raises
    ------
    ZeroOnLoop
        If ``func`` vanishes (relative to its size on the loop) at a sample,
        or refinement cannot bring a step under π/2.
    """
    pts = np.asarray(polyline, dtype=complex)
    values = np.asarray(func(pts), dtype=complex)
    scale = max(float(np.max(np.abs(values))), 1e-300)

    def check(z: complex, v: complex) -> None:
        if abs(v) <= _ZERO_TOL * scale:
            raise ZeroOnLoop(f"Function vanishes on the loop near {z:.6g}")

    total = 0.0
    for a, b, va, vb in zip(pts[:-1], pts[1:], values[:-1], values[1:]):
        check(a, va)
        stack = [(a, b, va, vb, 0)]
        while stack:
            za, zb, fa, fb, depth = stack.pop()
            step = float(np.angle(fb / fa))
            if abs(step) < np.pi / 2:
                total += step
                continue
            if depth >= _MAX_DEPTH:
                raise ZeroOnLoop(f"Argument jump not resolved near {za:.6g}; a zero lies on the loop")
            zm = 0.5 * (za + zb)
            fm = complex(func(np.array([zm]))[0])
            check(zm, fm)
            # second half pushed first so the first half is summed first
            stack.append((zm, zb, fm, fb, depth + 1))
            stack.append((za, zm, fa, fm, depth + 1))
    return int(round(total / (2 * np.pi)))


def discriminant_winding(f: BiPoly, loop: LoopSpec) -> int:
    """Winding of ``Δ_ω(f) / D_r^(2r−2)`` along ``loop``.

    Equals the crossing number of the braid traced on the same loop.

    Raises
    ------
    ZeroOnLoop
        If Δ_ω or D_r vanishes on the loop.
    """
    if f.r < 2:
        return 0
    pts = loop.points()
    disc = discriminant(f, wrt=Plane.OMEGA)
    lead = f.D_r
    w_disc = winding_number(disc, pts)
    w_lead = winding_number(lead, pts) if lead.degree >= 1 else 0
    result = w_disc - (2 * f.r - 2) * w_lead
    logger.info("Discriminant winding %d (Δ: %d, D_r: %d)", result, w_disc, w_lead)
    return result
