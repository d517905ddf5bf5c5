"""Tests for riemann_bands.toolkit.BandSurface."""

from __future__ import annotations

import json
from unittest.mock import patch

import pytest

from riemann_bands import BandSurface
from riemann_bands.braid import LoopSpec
from riemann_bands.lattice import BlochHamiltonian
from riemann_bands.polyalg import BiPoly, Plane
from riemann_bands.riemann import branch_points
from riemann_bands.serialize import serialize_model
from riemann_bands.settings import Settings


# ---- Construction ----


class TestLoad:
    def test_registry_name(self):
        surface = BandSurface.load("ssh")
        assert surface.name == "ssh"
        assert isinstance(surface.model, BlochHamiltonian)
        assert surface.curve.r == 2

    def test_file(self, tmp_path, ssh):
        path = tmp_path / "my_chain.json"
        path.write_text(json.dumps(serialize_model(ssh)))
        surface = BandSurface.load(path)
        assert surface.name == "my_chain"
        assert surface.model == ssh

    def test_unknown(self):
        with pytest.raises(KeyError):
            BandSurface.load("no_such_model")

    def test_explicit_settings(self, ssh):
        settings = Settings(theta_grid=128)
        assert BandSurface(ssh, settings=settings).settings.theta_grid == 128

    def test_bare_curve_has_no_hamiltonian(self, three_band_curve):
        surface = BandSurface(three_band_curve)
        assert isinstance(surface.curve, BiPoly)
        assert surface.hamiltonian is None

    def test_coefficients_realized_on_demand(self, hexagon_coeffs):
        surface = BandSurface(hexagon_coeffs)
        assert surface.coefficients is hexagon_coeffs
        H = surface.hamiltonian
        assert H.r == 2 and (H.p, H.q) == (1, 1)


# ---- Caching ----


class TestCaching:
    def test_branch_points_computed_once(self, ssh):
        surface = BandSurface(ssh)
        with patch("riemann_bands.toolkit.branch_points", wraps=branch_points) as spy:
            first = surface.branch_points(Plane.OMEGA)
            second = surface.branch_points("omega")
        assert first is second
        assert spy.call_count == 1

    def test_monodromy_keyed_by_base(self, hexagon_coeffs):
        surface = BandSurface(hexagon_coeffs)
        a = surface.monodromy(Plane.OMEGA, 0j)
        assert surface.monodromy(Plane.OMEGA, 0) is a
        assert surface.monodromy(Plane.OMEGA, 0.05 + 0.02j) is not a


# ---- Report ----


class TestReport:
    def test_ssh(self, ssh):
        report = BandSurface(ssh, name="ssh").report()
        assert report["model"] == "ssh"
        assert report["omega_plane"]["genus"] == 1
        assert report["z_plane"]["genus"] == 1
        assert report["omega_plane"]["consistent"]
        assert report["z_plane"]["n_poles"] == 1
        assert report["braid"]["crossing_number"] == 0
        assert report["braid"]["winding"] == 0
        assert report["braid"]["cyclically_reduced_length"] == 0

    def test_custom_loop(self, hexagon_coeffs):
        report = BandSurface(hexagon_coeffs).report(LoopSpec.circle(0j, 3.0))
        assert report["braid"]["winding"] == 2
        assert report["braid"]["crossing_number"] == 2
        json.dumps(report)
