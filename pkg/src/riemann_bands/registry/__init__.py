"""Named reference models shipped with the package."""

from riemann_bands.registry.models import ModelRegistry

__all__ = ["ModelRegistry"]
