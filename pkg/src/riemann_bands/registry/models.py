"""Reference model registry access.

Loads model_registry.json: each entry has a ``description``, a ``tags``
list and a ``model`` document in the model-file schema.
"""

from __future__ import annotations

import copy
import json
import logging
from pathlib import Path

from riemann_bands.serialize import parse_payload

logger = logging.getLogger(__name__)

_DEFAULT_REGISTRY = Path(__file__).parent / "model_registry.json"


class ModelRegistry:
    """Named reference models.

    Loads the JSON registry once on init so scripts and tests can refer to
    the standard curves by name instead of repeating their coefficients.

    Parameters
    ----------
    registry_path : Path or None
        Path to the JSON registry file. Defaults to the bundled
        ``model_registry.json`` next to this module.
    """

    def __init__(self, registry_path: Path | None = None) -> None:
        path = registry_path or _DEFAULT_REGISTRY
        with open(path) as f:
            self._data: dict[str, dict] = json.load(f)
        logger.debug("Loaded model registry with %d models", len(self._data))

    def get(self, name: str) -> dict:
        """Return a copy of the registry entry for ``name``.

        Raises
        ------
        KeyError
            If the model is not registered.
        """
        if name not in self._data:
            raise KeyError(f"Unknown model: {name!r}")
        return copy.deepcopy(self._data[name])

    def list_models(self) -> list[str]:
        """Registered model names, sorted."""
        return sorted(self._data.keys())

    def with_tag(self, tag: str) -> list[str]:
        """Sorted names of models carrying ``tag``."""
        return sorted(k for k, v in self._data.items() if tag in v.get("tags", []))

    def payload(self, name: str) -> dict:
        """The model document for ``name``, with ``name`` filled in."""
        doc = self.get(name)["model"]
        doc.setdefault("name", name)
        return doc

    def load(self, name: str):
        """Parse the registered model into its domain object.

        Returns
        -------
        BlochHamiltonian, BiPoly or TwoBandCoefficients
        """
        return parse_payload(self.payload(name))
