"""Non-Hermitian band structures as Riemann surfaces."""

from riemann_bands.registry import ModelRegistry
from riemann_bands.settings import Settings
from riemann_bands.toolkit import BandSurface

__all__ = ["BandSurface", "ModelRegistry", "Settings"]
