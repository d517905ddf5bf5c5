"""Closed loops in the z-plane."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

DEFAULT_SAMPLES = 256


class LoopKind(str, Enum):
    CIRCLE = "circle"
    POLYLINE = "polyline"


class Orientation(str, Enum):
    CCW = "ccw"
    CW = "cw"


@dataclass(frozen=True)
class LoopSpec:
    """A circle or a closed polyline with an orientation.

    Use :meth:`circle` or :meth:`polyline` rather than the constructor.
    """

    kind: LoopKind
    center: complex = 0j
    radius: float = 1.0
    vertices: tuple[complex, ...] = field(default=())
    orientation: Orientation = Orientation.CCW
    samples: int = DEFAULT_SAMPLES

    @classmethod
    def circle(
        cls,
        center: complex = 0j,
        radius: float = 1.0,
        orientation: Orientation | str = Orientation.CCW,
        samples: int = DEFAULT_SAMPLES,
    ) -> LoopSpec:
        if radius <= 0:
            raise ValueError(f"Loop radius must be positive, got {radius}")
        if samples < 8:
            raise ValueError(f"Loop needs at least 8 samples, got {samples}")
        return cls(
            kind=LoopKind.CIRCLE,
            center=complex(center),
            radius=float(radius),
            orientation=Orientation(orientation),
            samples=samples,
        )

    @classmethod
    def polyline(cls, vertices, orientation: Orientation | str = Orientation.CCW) -> LoopSpec:
        pts = tuple(complex(v) for v in vertices)
        if len(pts) < 3:
            raise ValueError(f"Polyline loop needs at least 3 vertices, got {len(pts)}")
        return cls(
            kind=LoopKind.POLYLINE,
            vertices=pts,
            orientation=Orientation(orientation),
            samples=len(pts),
        )

    @classmethod
    def parse(cls, text: str, samples: int = DEFAULT_SAMPLES) -> LoopSpec:
        """From the CLI form ``"center_re,center_im,radius"``."""
        try:
            re_c, im_c, radius = (float(x) for x in text.split(","))
        except ValueError as exc:
            raise ValueError(f"Loop {text!r} is not 'center_re,center_im,radius'") from exc
        return cls.circle(complex(re_c, im_c), radius, samples=samples)

    def points(self) -> np.ndarray:
        """Closed polyline (first point repeated at the end) in traversal order."""
        if self.kind is LoopKind.CIRCLE:
            angles = 2 * np.pi * np.arange(self.samples + 1) / self.samples
            pts = self.center + self.radius * np.exp(1j * angles)
            pts[-1] = pts[0]
        else:
            pts = np.array(self.vertices + (self.vertices[0],), dtype=complex)
            if abs(self.vertices[-1] - self.vertices[0]) == 0:
                pts = pts[:-1]
        return pts[::-1].copy() if self.orientation is Orientation.CW else pts

    def reversed(self) -> LoopSpec:
        flipped = Orientation.CW if self.orientation is Orientation.CCW else Orientation.CCW
        return LoopSpec(
            kind=self.kind,
            center=self.center,
            radius=self.radius,
            vertices=self.vertices,
            orientation=flipped,
            samples=self.samples,
        )

    def to_dict(self) -> dict:
        if self.kind is LoopKind.CIRCLE:
            return {
                "kind": self.kind.value,
                "center": [self.center.real, self.center.imag],
                "radius": self.radius,
                "orientation": self.orientation.value,
            }
        return {
            "kind": self.kind.value,
            "vertices": [[v.real, v.imag] for v in self.vertices],
            "orientation": self.orientation.value,
        }
