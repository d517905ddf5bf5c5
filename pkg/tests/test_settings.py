"""Tests for riemann_bands.settings.Settings."""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from riemann_bands.errors import ModelInvalid
from riemann_bands.settings import Settings


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in Settings.model_fields:
        monkeypatch.delenv(f"RIEMANN_BANDS_{name.upper()}", raising=False)


class TestDefaults:
    def test_values(self):
        s = Settings()
        assert s.theta_grid == 256
        assert s.mu == 1
        assert s.restarts == 200
        assert s.chain_length == 60

    def test_theta_grid_floor(self):
        with pytest.raises(ValidationError):
            Settings(theta_grid=32)

    def test_chain_length_ceiling(self):
        with pytest.raises(ValidationError):
            Settings(chain_length=500)


class TestFromEnv:
    def test_no_overrides(self):
        assert Settings.from_env(dotenv=False) == Settings()

    def test_override(self, monkeypatch):
        monkeypatch.setenv("RIEMANN_BANDS_THETA_GRID", "512")
        monkeypatch.setenv("RIEMANN_BANDS_LOG_LEVEL", "DEBUG")
        s = Settings.from_env(dotenv=False)
        assert s.theta_grid == 512
        assert s.log_level == "DEBUG"

    def test_bad_override(self, monkeypatch):
        monkeypatch.setenv("RIEMANN_BANDS_MU", "zero")
        with pytest.raises(ModelInvalid, match="settings override"):
            Settings.from_env(dotenv=False)
