"""Tests for riemann_bands.registry.models.ModelRegistry."""

from __future__ import annotations

import json

import pytest

from riemann_bands.design import TwoBandCoefficients
from riemann_bands.errors import SchemaViolation
from riemann_bands.lattice import BlochHamiltonian
from riemann_bands.polyalg import BiPoly
from riemann_bands.registry import ModelRegistry


# ---- Fixtures ----


@pytest.fixture()
def custom_registry(tmp_path):
    """Registry loaded from a minimal custom JSON file."""
    data = {
        "chain": {
            "description": "Hatano-Nelson chain",
            "tags": ["hamiltonian", "one_band"],
            "model": {
                "type": "hamiltonian",
                "r": 1,
                "hoppings": [{"m": 1, "n": 1, "s": -1, "t": 1}, {"m": 1, "n": 1, "s": 1, "t": 0.5}],
            },
        },
        "broken": {
            "description": "Band index out of range",
            "tags": [],
            "model": {"type": "hamiltonian", "r": 1, "hoppings": [{"m": 2, "n": 1, "s": 1, "t": 1}]},
        },
    }
    path = tmp_path / "test_registry.json"
    path.write_text(json.dumps(data))
    return ModelRegistry(registry_path=path)


# ---- Init ----


class TestInit:
    def test_loads_bundled_registry(self, registry):
        assert len(registry.list_models()) > 0

    def test_custom_path(self, custom_registry):
        assert custom_registry.list_models() == ["broken", "chain"]

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ModelRegistry(registry_path=tmp_path / "nonexistent.json")


# ---- Lookup ----


class TestLookup:
    def test_reference_models_present(self, registry):
        names = registry.list_models()
        for name in ("hexagon", "hexagon_bent", "exchange_end", "y_junction", "ssh", "three_band"):
            assert name in names

    def test_list_is_sorted(self, registry):
        names = registry.list_models()
        assert names == sorted(names)

    def test_unknown_model(self, registry):
        with pytest.raises(KeyError, match="Unknown model"):
            registry.get("kagome")

    def test_get_returns_copy(self, registry):
        entry = registry.get("ssh")
        entry["model"]["r"] = 99
        assert registry.get("ssh")["model"]["r"] == 2

    def test_with_tag(self, registry):
        assert registry.with_tag("roots_of_unity") == ["hexagon", "hexagon_bent"]
        assert registry.with_tag("nothing") == []

    def test_payload_carries_name(self, registry):
        assert registry.payload("three_band")["name"] == "three_band"


# ---- Parsing ----


class TestLoad:
    def test_every_entry_parses(self, registry):
        for name in registry.list_models():
            assert isinstance(registry.load(name), (BlochHamiltonian, BiPoly, TwoBandCoefficients))

    def test_ssh_matches_fixture(self, registry, ssh):
        assert registry.load("ssh") == ssh

    def test_three_band_matches_fixture(self, registry, three_band_curve):
        curve = registry.load("three_band")
        assert (curve.coeffs == three_band_curve.coeffs).all()
        assert curve.z_shift == three_band_curve.z_shift

    def test_bent_matches_fixture(self, registry, bent_coeffs):
        assert registry.load("hexagon_bent").allclose(bent_coeffs, 1e-9)

    def test_invalid_entry(self, custom_registry):
        with pytest.raises(SchemaViolation, match="/hoppings/0/m"):
            custom_registry.load("broken")
