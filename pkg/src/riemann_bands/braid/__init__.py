"""Braid words of eigenvalue strands and discriminant windings along z-loops."""

from riemann_bands.braid.loops import LoopKind, LoopSpec, Orientation
from riemann_bands.braid.strands import (
    StrandTrace,
    braid_on_loop,
    pole_braid,
    rank_order,
    trace_strands,
    word_from_trace,
)
from riemann_bands.braid.winding import discriminant_winding, winding_number
from riemann_bands.braid.words import BraidWord, crossing_number, perm_image

__all__ = [
    "BraidWord",
    "LoopKind",
    "LoopSpec",
    "Orientation",
    "StrandTrace",
    "braid_on_loop",
    "crossing_number",
    "discriminant_winding",
    "perm_image",
    "pole_braid",
    "rank_order",
    "trace_strands",
    "winding_number",
    "word_from_trace",
]
