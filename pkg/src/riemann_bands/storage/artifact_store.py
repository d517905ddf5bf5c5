"""Artifact files for CLI runs.

JSON is written with sorted keys and two-space indent so identical results
give byte-identical files; CSV tables come from pandas. Every write goes to
a temporary file in the target directory and is moved into place with
``os.replace``.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

import pandas as pd

logger = logging.getLogger(__name__)


class ArtifactStore:
    """Writes analysis artifacts under one output directory.

    Parameters
    ----------
    out_dir : Path
        Directory receiving the artifacts; created on demand.
    """

    def __init__(self, out_dir: Path) -> None:
        self.out_dir = Path(out_dir)
        self.written: list[Path] = []

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def write_json(self, name: str, payload) -> Path:
        """Write ``payload`` (already JSON-compatible) to ``out_dir/name``."""
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        return self._atomic_write(name, text)

    def write_csv(self, name: str, df: pd.DataFrame) -> Path:
        """Write ``df`` without its index to ``out_dir/name``."""
        return self._atomic_write(name, df.to_csv(index=False, float_format="%.12g"))

    def read_json(self, name: str):
        with open(self.path(name)) as f:
            return json.load(f)

    def read_csv(self, name: str) -> pd.DataFrame:
        return pd.read_csv(self.path(name))

    # -- Private helpers --

    def _atomic_write(self, name: str, text: str) -> Path:
        target = self.path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(text)
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        if target not in self.written:
            self.written.append(target)
        logger.debug("Wrote %s (%d bytes)", target, len(text))
        return target
