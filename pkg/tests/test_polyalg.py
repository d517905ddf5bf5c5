"""Tests for riemann_bands.polyalg."""

from __future__ import annotations

import numpy as np
import pytest

from riemann_bands.design import TwoBandCoefficients, branch_polynomial
from riemann_bands.errors import ModelInvalid, ZeroPolynomial
from riemann_bands.polyalg import (
    BiPoly,
    Plane,
    UniPoly,
    all_roots,
    cluster_roots,
    discriminant,
    eval_poly,
    from_roots,
    resultant,
    sort_canonical,
    univariate_discriminant,
    univariate_resultant,
)

from conftest import ROOTS_OF_UNITY


def _nearest(found, expected) -> float:
    found = np.asarray(found)
    return max(float(np.min(np.abs(found - e))) for e in expected)


# ---- UniPoly ----


class TestUniPoly:
    def test_trims_negligible_top_coefficients(self):
        p = UniPoly.from_coeffs([1.0, 2.0, 1e-20])
        assert p.degree == 1

    def test_zero_polynomial(self):
        p = UniPoly.from_coeffs([0, 0])
        assert p.is_zero

    def test_eval(self):
        p = UniPoly.from_coeffs([-1, 0, 1])
        assert abs(eval_poly(p, 1.0)) < 1e-15
        assert abs(p(2.0) - 3.0) < 1e-15

    def test_non_finite_raises(self):
        with pytest.raises(ZeroPolynomial):
            UniPoly.from_coeffs([1.0, np.inf])


# ---- all_roots ----


class TestAllRoots:
    def test_recovers_known_roots(self):
        expected = np.array([0.5, -1.2 + 0.3j, 2j, 1.5 - 1j, -0.7j])
        found = all_roots(from_roots(expected, leading=3.0 - 1j))
        assert len(found) == 5
        assert _nearest(found, expected) < 1e-10

    def test_exact_zero_roots_split_off(self):
        found = all_roots(UniPoly.from_coeffs([0, 0, -2, 1]))
        assert np.allclose(found, [0, 0, 2])

    def test_sorted_canonically(self):
        found = all_roots(from_roots([3.0, -1.0, 1j]))
        assert np.allclose(found, sort_canonical(found))
        assert abs(found[-1] - 3.0) < 1e-12

    def test_roots_of_unity(self):
        p = UniPoly.from_coeffs([-1, 0, 0, 0, 0, 0, 1])
        assert _nearest(all_roots(p), ROOTS_OF_UNITY) < 1e-12

    def test_random_roots_recovered(self, rng):
        for degree in (2, 4, 7):
            expected = rng.normal(size=degree) + 1j * rng.normal(size=degree)
            leading = complex(rng.normal(), rng.normal())
            found = all_roots(from_roots(expected, leading=leading))
            assert len(found) == degree
            assert _nearest(found, expected) < 1e-8

    def test_zero_polynomial_raises(self):
        with pytest.raises(ZeroPolynomial):
            all_roots(UniPoly.from_coeffs([0]))

    def test_constant_raises(self):
        with pytest.raises(ValueError, match="no roots"):
            all_roots(UniPoly.from_coeffs([2.0]))


class TestClusterRoots:
    def test_merges_close_roots(self):
        clusters = cluster_roots([1.0, 1.0 + 1e-10, 2.0])
        assert [m for _, m in clusters] == [2, 1]
        assert abs(clusters[0][0] - 1.0) < 1e-9

    def test_empty(self):
        assert cluster_roots([]) == []


# ---- Univariate elimination ----


class TestUnivariateElimination:
    def test_resultant_magnitude(self):
        p = from_roots([1.0, 2.0])
        q = from_roots([3.0])
        assert abs(abs(univariate_resultant(p, q)) - 2.0) < 1e-12

    def test_resultant_vanishes_on_common_root(self):
        p = from_roots([1.0, 2.0])
        q = from_roots([2.0, 5.0])
        assert abs(univariate_resultant(p, q)) < 1e-10

    def test_random_resultant_is_product_of_root_differences(self, rng):
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        expected = np.prod(np.abs(a[:, None] - b[None, :]))
        assert abs(abs(univariate_resultant(from_roots(a), from_roots(b))) - expected) < 1e-9 * max(1.0, expected)

    def test_random_common_root(self, rng):
        a, b = (rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(2))
        common = complex(rng.normal(), rng.normal())
        p = from_roots(np.append(a, common))
        q = from_roots(np.append(b, common))
        assert abs(univariate_resultant(p, q)) < 1e-9

    def test_discriminant_of_x2_minus_1(self):
        assert abs(abs(univariate_discriminant(UniPoly.from_coeffs([-1, 0, 1]))) - 4.0) < 1e-12

    def test_discriminant_needs_degree_two(self):
        with pytest.raises(ValueError, match="degree"):
            univariate_discriminant(UniPoly.from_coeffs([1, 1]))


# ---- BiPoly ----


class TestBiPoly:
    def test_degrees(self, hexagon_curve):
        assert hexagon_curve.r == 2
        assert hexagon_curve.u == 3

    def test_clears_low_z_powers(self):
        f = BiPoly.from_coeffs([[0, 1, 2], [0, 3, 0]], z_shift=1)
        assert f.u == 1
        assert f.z_shift == 0

    def test_zero_raises(self):
        with pytest.raises(ModelInvalid):
            BiPoly.from_coeffs(np.zeros((2, 2)))

    def test_needs_both_degrees(self):
        with pytest.raises(ModelInvalid, match="degree"):
            BiPoly.from_coeffs([[1, 2, 3]])

    def test_fiber_poly_at_omega_zero(self, hexagon_coeffs, hexagon_curve):
        p = hexagon_curve.fiber_poly(Plane.OMEGA, 0.0)
        assert np.allclose(p.coeffs, [hexagon_coeffs.B0, hexagon_coeffs.B1, hexagon_coeffs.B2, hexagon_coeffs.B3])

    def test_transpose_swaps_degrees(self, hexagon_curve):
        t = hexagon_curve.transpose()
        assert (t.r, t.u) == (hexagon_curve.u, hexagon_curve.r)


# ---- Bivariate elimination ----


class TestResultant:
    def test_linear_pair(self):
        f = BiPoly.from_coeffs([[0, -1], [1, 0]])  # ω − z
        g = BiPoly.from_coeffs([[-2, 1], [1, 0]])  # ω + z − 2
        res = resultant(f, g, eliminate=Plane.OMEGA)
        assert res.degree == 1
        assert _nearest(all_roots(res), [1.0]) < 1e-12


class TestDiscriminant:
    def test_hexagon_branch_points_are_roots_of_unity(self, hexagon_curve):
        disc = discriminant(hexagon_curve, wrt=Plane.Z)
        roots = all_roots(disc)
        assert len(roots) == 6
        assert _nearest(roots, ROOTS_OF_UNITY) < 1e-9

    def test_hexagon_z_plane_branch_points(self, hexagon_curve):
        roots = all_roots(discriminant(hexagon_curve, wrt=Plane.OMEGA))
        a = np.sqrt(3 + 2 * np.sqrt(3))
        b = np.sqrt(2 * np.sqrt(3) - 3)
        assert _nearest(roots, [a, -a, 1j * b, -1j * b]) < 1e-7

    def test_proportional_to_branch_polynomial(self, bent_coeffs):
        disc = discriminant(bent_coeffs.to_bipoly(), wrt=Plane.Z).coeffs
        ref = branch_polynomial(bent_coeffs).coeffs
        ratio = disc[-1] / ref[-1]
        assert np.allclose(disc, ratio * ref, atol=1e-9 * np.max(np.abs(disc)))

    def test_random_curve_fibers_degenerate_at_branch_points(self, rng):
        c = TwoBandCoefficients.from_vector(rng.normal(size=7) + 1j * rng.normal(size=7))
        f = c.to_bipoly()
        for w in all_roots(discriminant(f, wrt=Plane.Z)):
            at = abs(univariate_discriminant(f.fiber_poly(Plane.OMEGA, w)))
            nearby = max(
                abs(univariate_discriminant(f.fiber_poly(Plane.OMEGA, w + step))) for step in (0.1, 0.1j)
            )
            assert at < 1e-6 * nearby

    def test_degree_one_raises(self):
        f = BiPoly.from_coeffs([[0, -1], [1, 0]])
        with pytest.raises(ValueError, match="degree"):
            discriminant(f, wrt=Plane.OMEGA)
