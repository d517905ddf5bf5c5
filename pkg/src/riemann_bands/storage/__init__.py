"""Artifact files and the parquet run log."""

from riemann_bands.storage.artifact_store import ArtifactStore
from riemann_bands.storage.run_log import RunLog

__all__ = ["ArtifactStore", "RunLog"]
