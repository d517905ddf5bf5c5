"""Tests for branch points, monodromy and Riemann–Hurwitz accounting."""

from __future__ import annotations

import numpy as np
import pytest

from riemann_bands import BandSurface
from riemann_bands.design import TwoBandCoefficients
from riemann_bands.errors import (
    DisconnectedMonodromy,
    InconsistentMonodromy,
    NonSquareFreeDiscriminant,
    NotAdjacent,
    PathTooCloseToBranchPoint,
)
from riemann_bands.lattice import BlochHamiltonian, char_poly
from riemann_bands.polyalg import BiPoly, Plane
from riemann_bands.riemann import (
    Direction,
    FiberTracker,
    Permutation,
    PointKind,
    branch_points,
    check_connectedness,
    check_consistency,
    hurwitz_move,
    loop_word,
    monodromy,
    product,
    riemann_hurwitz,
    special_points,
    track_fiber,
)
from riemann_bands.riemann.monodromy import loop_clearance
from riemann_bands.riemann.tracking import match_fibers

from conftest import ROOTS_OF_UNITY


def _perm_at(rep, s: int):
    """Permutation of the branch point at ``exp(2πi s/6)``."""
    return rep.points[rep.index_of(ROOTS_OF_UNITY[s - 1])].permutation


@pytest.fixture
def hexagon_rep(hexagon_curve):
    return monodromy(hexagon_curve, base=0j)


# ---- Special points ----


class TestSpecialPoints:
    def test_ssh_omega_plane(self, ssh):
        bps = branch_points(char_poly(ssh))
        assert sorted(round(b.location.real, 9) for b in bps) == [-3, -1, 1, 3]
        assert all(abs(b.location.imag) < 1e-9 for b in bps)

    def test_ssh_z_plane_has_pole_at_origin(self, ssh):
        points = special_points(char_poly(ssh), Plane.Z)
        poles = [p for p in points if p.kind is PointKind.POLE]
        branch = [p for p in points if p.kind is PointKind.BRANCH]
        assert len(poles) == 1 and abs(poles[0].location) < 1e-12
        assert sorted(round(b.location.real, 9) for b in branch) == [-2, -0.5]

    def test_hexagon_has_no_omega_poles(self, hexagon_curve):
        points = special_points(hexagon_curve, Plane.OMEGA)
        assert len(points) == 6
        assert all(p.kind is PointKind.BRANCH for p in points)

    def test_repeated_root_rejected_when_strict(self):
        f = char_poly(BlochHamiltonian.ssh(1.0, 1.0))
        with pytest.raises(NonSquareFreeDiscriminant):
            branch_points(f)

    def test_repeated_root_kept_when_lenient(self):
        f = char_poly(BlochHamiltonian.ssh(1.0, 1.0))
        bps = branch_points(f, strict=False)
        assert max(b.multiplicity for b in bps) == 2


# ---- Monodromy ----


class TestMonodromy:
    def test_all_transpositions(self, hexagon_rep):
        assert hexagon_rep.d == 3
        assert [p.permutation.cycle_type() for p in hexagon_rep.points] == [(2, 1)] * 6

    def test_vertical_pairs_cancel(self, hexagon_rep):
        assert (_perm_at(hexagon_rep, 1) * _perm_at(hexagon_rep, 5)).is_identity
        assert (_perm_at(hexagon_rep, 4) * _perm_at(hexagon_rep, 2)).is_identity

    def test_horizontal_pair_is_three_cycle(self, hexagon_rep):
        assert (_perm_at(hexagon_rep, 4) * _perm_at(hexagon_rep, 5)).cycle_type() == (3,)

    def test_consistent_and_connected(self, hexagon_rep):
        consistent, inferred = check_consistency(hexagon_rep)
        assert consistent
        assert inferred.is_identity
        assert check_connectedness(hexagon_rep)

    def test_points_in_angular_order(self, hexagon_rep):
        angles = [float(np.angle(p.location - hexagon_rep.base)) for p in hexagon_rep.points]
        # the point on the negative axis may land on either side of the branch
        angles = [np.pi if a < -np.pi + 1e-9 else a for a in angles]
        assert angles == sorted(angles)

    def test_collinear_points_move_the_base(self, ssh):
        rep = monodromy(char_poly(ssh))
        assert abs(rep.base.imag) > 1e-6
        assert check_consistency(rep)[0]

    def test_bent_cut_is_consistent(self, bent_coeffs):
        # thin loop around the cut 5 → right of 6 → 1
        rep = monodromy(bent_coeffs.to_bipoly(), base=0j)
        loop = [
            0.4 - 0.9j,
            0.5 - 1.0j,
            1.55 + 0.0j,
            0.5 + 1.0j,
            0.4 + 0.9j,
            0.5 + 0.75j,
            1.25 + 0.0j,
            0.5 - 0.75j,
        ]
        word = loop_word(loop, rep)
        assert rep.index_of(ROOTS_OF_UNITY[5]) in {k for k, _ in word.letters}
        assert word.permutation.is_identity

    def test_three_band_z_plane(self, three_band_curve):
        rep = monodromy(three_band_curve, plane=Plane.Z)
        assert rep.d == 3
        assert len(rep.branch) == 12
        assert all(p.cycle_type == (2, 1) for p in rep.branch)
        assert len(rep.poles) == 1 and abs(rep.poles[0].location) < 1e-12
        assert rep.poles[0].permutation.is_identity
        assert rep.infinity_perm.is_identity
        assert check_consistency(rep)[0]
        assert check_connectedness(rep)
        assert riemann_hurwitz(rep).genus == 4

    def test_outer_loop_matches_product(self, rng):
        # a ccw circle entered from the left of the base passes the cuts in listed order
        for _ in range(3):
            values = rng.normal(size=7) + 1j * rng.normal(size=7)
            curve = TwoBandCoefficients.from_vector(values).to_bipoly()
            rep = monodromy(curve)
            radius = 2.0 * max(abs(p.location - rep.base) for p in rep.points) + 1.0
            angles = np.pi + 2 * np.pi * np.arange(257) / 256
            path = np.concatenate([[rep.base], rep.base + radius * np.exp(1j * angles), [rep.base]])
            end, _ = FiberTracker(curve, Plane.OMEGA).run(path, rep.fiber)
            total = product(rep.perms, rep.d)
            assert match_fibers(end, rep.fiber) == total
            assert (total * rep.infinity_perm).is_identity


# ---- Loop placement ----


class TestLoopClearance:
    def test_collinear_points_block_the_segment(self):
        assert loop_clearance(0j, [1, -1, 3, -3], [0.5] * 4) == 0.0

    def test_measured_in_target_radius(self):
        assert loop_clearance(0j, [1, 1j], [0.25, 0.25]) == pytest.approx(4.0)

    def test_base_on_a_point(self):
        assert loop_clearance(1j, [1, 1j], [0.25, 0.25]) == 0.0

    def test_default_base_clears_symmetric_points(self, three_band_curve):
        rep = monodromy(three_band_curve, plane=Plane.Z)
        radii = [
            0.25 * min(abs(p.location - q.location) for q in rep.points if q is not p)
            for p in rep.points
        ]
        assert loop_clearance(rep.base, [p.location for p in rep.points], radii) >= 0.25


# ---- Fiber tracking ----


@pytest.fixture
def square_root_curve():
    """``ω − z²``: the fiber over ω is ``±√ω``."""
    return BiPoly.from_coeffs([[0, 0, -1], [1, 0, 0]])


UNIT_CIRCLE = np.exp(2j * np.pi * np.arange(129) / 128)


class TestFiberTracking:
    def test_circle_swaps_square_roots(self, square_root_curve):
        end, perm = track_fiber(square_root_curve, UNIT_CIRCLE, [1.0, -1.0], Plane.OMEGA)
        assert perm == Permutation.transposition(2, 0, 1)
        np.testing.assert_allclose(end, [-1.0, 1.0], atol=1e-10)

    def test_loop_then_reverse_is_identity(self, square_root_curve):
        path = np.concatenate([UNIT_CIRCLE, UNIT_CIRCLE[::-1][1:]])
        _, perm = track_fiber(square_root_curve, path, [1.0, -1.0], Plane.OMEGA)
        assert perm.is_identity

    def test_twice_around_is_identity(self, square_root_curve):
        path = np.concatenate([UNIT_CIRCLE, UNIT_CIRCLE[1:]])
        _, perm = track_fiber(square_root_curve, path, [1.0, -1.0], Plane.OMEGA)
        assert perm.is_identity

    def test_trace_stays_on_curve(self, square_root_curve):
        tracker = FiberTracker(square_root_curve, Plane.OMEGA)
        end, trace = tracker.run(UNIT_CIRCLE[:65], [1.0, -1.0], record=True)
        params, points, fibers = trace.as_arrays()
        assert params[0] == 0 and params[-1] == pytest.approx(64)
        np.testing.assert_allclose(fibers**2, np.repeat(points[:, None], 2, axis=1), atol=1e-10)
        np.testing.assert_allclose(end, [1j, -1j], atol=1e-10)

    def test_wrong_start_fiber(self, square_root_curve):
        with pytest.raises(ValueError, match="does not solve"):
            track_fiber(square_root_curve, UNIT_CIRCLE, [1.0, 2.0], Plane.OMEGA)

    def test_clearance_enforced(self, square_root_curve):
        with pytest.raises(PathTooCloseToBranchPoint):
            track_fiber(
                square_root_curve,
                UNIT_CIRCLE,
                [1.0, -1.0],
                Plane.OMEGA,
                special_points=[0.95],
                clearance=0.1,
            )

    def test_monodromy_of_square_root(self, square_root_curve):
        rep = monodromy(square_root_curve)
        assert [p.cycle_type for p in rep.points] == [(2,)]
        assert rep.infinity_perm.cycle_type() == (2,)
        assert riemann_hurwitz(rep).genus == 0



# ---- Hurwitz moves ----


class TestHurwitzMove:
    def test_exchange_law(self, hexagon_rep):
        i = hexagon_rep.index_of(ROOTS_OF_UNITY[3])
        assert hexagon_rep.index_of(ROOTS_OF_UNITY[4]) == i + 1
        pi4, pi5 = hexagon_rep.points[i].permutation, hexagon_rep.points[i + 1].permutation
        moved = hurwitz_move(hexagon_rep, i, Direction.CCW)
        assert moved.points[i].permutation == pi5
        assert moved.points[i + 1].permutation == pi5.inverse() * pi4 * pi5
        assert moved.points[i].location == hexagon_rep.points[i].location

    def test_product_preserved(self, hexagon_rep):
        moved = hurwitz_move(hexagon_rep, 2, "cw")
        assert product(moved.perms, 3) == product(hexagon_rep.perms, 3)
        assert moved.infinity_perm == hexagon_rep.infinity_perm

    def test_cw_undoes_ccw(self, hexagon_rep):
        there = hurwitz_move(hexagon_rep, 3, Direction.CCW)
        back = hurwitz_move(there, 3, Direction.CW)
        assert back.perms == hexagon_rep.perms

    def test_not_adjacent(self, hexagon_rep):
        with pytest.raises(NotAdjacent):
            hurwitz_move(hexagon_rep, 5)


# ---- Riemann–Hurwitz ----


class TestGenus:
    def test_ssh_is_elliptic_from_both_planes(self, ssh):
        surface = BandSurface(ssh, name="ssh")
        assert surface.genus(Plane.OMEGA).genus == 1
        assert surface.genus(Plane.Z).genus == 1

    def test_hexagon_is_elliptic(self, hexagon_coeffs):
        surface = BandSurface(hexagon_coeffs, name="hexagon")
        omega = surface.genus(Plane.OMEGA)
        assert (omega.genus, omega.n_bp, omega.d) == (1, 6, 3)
        assert surface.genus(Plane.Z).genus == 1

    @pytest.mark.parametrize(
        "couplings, p, q",
        [
            ({-1: 1.0, 1: 0.5, 2: 0.3 + 0.2j}, 1, 2),
            ({-2: 1.0, -1: 0.3j, 0: 0.2, 1: -0.4 + 0.1j, 2: 0.7}, 2, 2),
        ],
    )
    def test_one_band_is_rational(self, couplings, p, q):
        surface = BandSurface(BlochHamiltonian.one_band(couplings))
        report = surface.genus(Plane.OMEGA)
        assert report.genus == 0
        assert report.n_bp == 2 * (p + q) - 2
        infinity = surface.monodromy(Plane.OMEGA).infinity_perm
        assert infinity.cycle_type() == tuple(sorted((p, q), reverse=True))

    def test_ramification_lists_infinity_last(self, hexagon_coeffs):
        report = BandSurface(hexagon_coeffs).genus(Plane.OMEGA)
        assert report.ramification[-1][0] is None
        assert report.ramification[-1][1] == (1, 1, 1)

    def test_rejects_inconsistent_representation(self, hexagon_rep):
        broken = hexagon_rep.with_perms(hexagon_rep.perms, Permutation.transposition(3, 0, 1))
        with pytest.raises(InconsistentMonodromy):
            riemann_hurwitz(broken)

    def test_rejects_disconnected_representation(self, hexagon_rep):
        trivial = [Permutation.identity(3)] * len(hexagon_rep.points)
        with pytest.raises(DisconnectedMonodromy):
            riemann_hurwitz(hexagon_rep.with_perms(trivial, Permutation.identity(3)))

    def test_random_one_band_infinity(self, rng):
        for _ in range(4):
            p, q = (int(k) for k in rng.integers(1, 4, size=2))
            couplings = {s: complex(*rng.normal(size=2)) for s in range(-p, q + 1) if s != 0}
            surface = BandSurface(BlochHamiltonian.one_band(couplings))
            report = surface.genus(Plane.OMEGA)
            assert report.genus == 0
            assert report.n_bp == 2 * (p + q) - 2
            infinity = surface.monodromy(Plane.OMEGA).infinity_perm
            assert infinity.cycle_type() == tuple(sorted((p, q), reverse=True))
