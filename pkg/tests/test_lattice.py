"""Tests for riemann_bands.lattice."""

from __future__ import annotations

import numpy as np
import pytest

from riemann_bands.errors import ModelInvalid, ZeroLambda
from riemann_bands.lattice import (
    BlochHamiltonian,
    TwoBandNN,
    chain_matrix,
    char_poly,
    finite_chain_spectrum,
    gauge_transform,
)
from riemann_bands.polyalg import Plane, all_roots, discriminant


def _same_set(a, b, atol: float) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if len(a) != len(b):
        return False
    return max(float(np.min(np.abs(b - x))) for x in a) < atol


# ---- BlochHamiltonian ----


class TestBlochHamiltonian:
    def test_from_hoppings_infers_ranges(self):
        H = BlochHamiltonian.one_band({-1: 1.0, 1: 0.5, 2: 0.3})
        assert (H.r, H.p, H.q) == (1, 1, 2)

    def test_band_index_out_of_range(self):
        with pytest.raises(ModelInvalid, match="band index"):
            BlochHamiltonian(r=1, p=1, q=1, hoppings={(2, 1, 0): 1.0, (1, 1, 1): 1.0, (1, 1, -1): 1.0})

    def test_shift_outside_range(self):
        with pytest.raises(ModelInvalid, match="outside the range"):
            BlochHamiltonian(r=1, p=0, q=1, hoppings={(1, 1, 1): 1.0, (1, 1, -1): 1.0})

    def test_missing_extreme_hopping(self):
        with pytest.raises(ModelInvalid, match="s = q"):
            BlochHamiltonian(r=1, p=1, q=2, hoppings={(1, 1, -1): 1.0, (1, 1, 1): 1.0})

    def test_all_zero_hoppings(self):
        with pytest.raises(ModelInvalid, match="no nonzero"):
            BlochHamiltonian.from_hoppings(1, {(1, 1, 0): 0.0})

    def test_ssh_matrix(self, ssh):
        z = 0.5 + 0.5j
        expected = np.array([[0, 2 + 1 / z], [2 + z, 0]])
        assert np.allclose(ssh.matrix(z), expected)

    def test_two_band_nn_blocks(self):
        h = TwoBandNN(a1=1, a0=2, am1=3, b1=4, b0=5, u_c=6, v_c=7).to_hamiltonian()
        assert np.allclose(h.block(1), [[1, 0], [7, 4]])
        assert np.allclose(h.block(0), [[2, 6], [6, 5]])
        assert np.allclose(h.block(-1), [[3, 7], [0, 0]])


# ---- char_poly ----


class TestCharPoly:
    def test_ssh(self, ssh):
        f = char_poly(ssh)
        expected = np.array([[-2, -5, -2], [0, 0, 0], [0, 1, 0]])
        assert f.z_shift == 1
        assert np.allclose(f.coeffs, expected)

    def test_one_band(self):
        f = char_poly(BlochHamiltonian.one_band({-1: 1.0, 1: 0.5}))
        assert np.allclose(f.coeffs, [[1, 0, 0.5], [0, -1, 0]])
        assert f.z_shift == 1

    def test_two_band_matches_coefficient_form(self):
        lattice = TwoBandNN(a1=0.3, a0=-0.2j, am1=1.1, b1=0.7 + 0.1j, b0=0.4, u_c=0.9, v_c=-0.5)
        f = char_poly(lattice.to_hamiltonian())
        a1, a0, am1, b1, b0, u, v = 0.3, -0.2j, 1.1, 0.7 + 0.1j, 0.4, 0.9, -0.5
        expected = np.zeros((3, 4), dtype=complex)
        expected[2, 1] = 1
        expected[1, :3] = [-am1, -(a0 + b0), -(a1 + b1)]
        expected[0, :] = [
            am1 * b0 - u * v,
            a0 * b0 + am1 * b1 - u**2 - v**2,
            a1 * b0 + a0 * b1 - u * v,
            a1 * b1,
        ]
        assert f.z_shift == 1
        assert np.allclose(f.coeffs, expected)

    def test_too_many_bands(self):
        H = BlochHamiltonian.from_hoppings(7, {(k, k, 1): 1.0 for k in range(1, 8)})
        with pytest.raises(ValueError, match="r ≤ 6"):
            char_poly(H)


# ---- gauge_transform ----


class TestGaugeTransform:
    def test_zero_lambda(self, hexagon_curve):
        with pytest.raises(ZeroLambda):
            gauge_transform(hexagon_curve, 0)

    def test_matches_coefficient_gauge(self, hexagon_coeffs):
        lam = 0.7 - 0.4j
        f = gauge_transform(hexagon_coeffs.to_bipoly(), lam)
        assert f.allclose(hexagon_coeffs.gauge(lam).to_bipoly())

    def test_omega_branch_points_invariant(self, hexagon_curve):
        before = all_roots(discriminant(hexagon_curve, wrt=Plane.Z))
        after = all_roots(discriminant(gauge_transform(hexagon_curve, 1.8j), wrt=Plane.Z))
        assert _same_set(before, after, atol=1e-9)

    def test_z_branch_points_scale(self, hexagon_curve):
        lam = 2.0
        before = all_roots(discriminant(hexagon_curve, wrt=Plane.OMEGA))
        after = all_roots(discriminant(gauge_transform(hexagon_curve, lam), wrt=Plane.OMEGA))
        assert _same_set(before / lam, after, atol=1e-9)


# ---- Finite chains ----


class TestFiniteChain:
    def test_eigenvalue_count(self, ssh):
        assert len(finite_chain_spectrum(ssh, 12)) == 24

    def test_cell_count_bounds(self, ssh):
        with pytest.raises(ValueError, match="Cell count"):
            chain_matrix(ssh, 1)
        with pytest.raises(ValueError, match="Cell count"):
            chain_matrix(ssh, 201)

    def test_gauge_radius_positive(self, ssh):
        with pytest.raises(ValueError, match="gauge_radius"):
            chain_matrix(ssh, 4, gauge_radius=0.0)

    def test_hermitian_chain_is_real(self, ssh):
        values = finite_chain_spectrum(ssh, 20)
        assert np.max(np.abs(values.imag)) < 1e-10

    def test_gauge_is_similarity(self, ssh):
        plain = finite_chain_spectrum(ssh, 8)
        gauged = finite_chain_spectrum(ssh, 8, gauge_radius=0.8)
        assert _same_set(plain, gauged, atol=1e-9)

    def test_hatano_nelson_open_spectrum(self):
        # hoppings 1 (s = 1) and 1/4 (s = −1): open spectrum cos(kπ/(N+1))
        H = BlochHamiltonian.one_band({1: 1.0, -1: 0.25})
        N = 20
        values = finite_chain_spectrum(H, N, gauge_radius=0.5)
        expected = np.cos(np.arange(1, N + 1) * np.pi / (N + 1))
        assert np.allclose(np.sort(values.real), np.sort(expected), atol=1e-10)
        assert np.max(np.abs(values.imag)) < 1e-10

    def test_return_vectors(self, ssh):
        values, vectors = finite_chain_spectrum(ssh, 5, return_vectors=True)
        assert vectors.shape == (10, 10)
        M = chain_matrix(ssh, 5)
        assert np.allclose(M @ vectors[:, 0], values[0] * vectors[:, 0], atol=1e-10)
