"""Tests for riemann_bands.riemann.permutations."""

from __future__ import annotations

import pytest

from riemann_bands.riemann import (
    Permutation,
    equivalent_up_to_relabeling,
    is_transitive,
    product,
)

T12 = Permutation.from_cycles(3, [(1, 2)])
T23 = Permutation.from_cycles(3, [(2, 3)])


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError, match="not a permutation"):
            Permutation((0, 0, 1))

    def test_one_line_round_trip(self):
        p = Permutation.from_one_line([3, 1, 2])
        assert p.one_line() == [3, 1, 2]
        assert p.images == (2, 0, 1)

    def test_from_cycles(self):
        p = Permutation.from_cycles(3, [(1, 3, 2)])
        assert p.one_line() == [3, 1, 2]
        assert p.cycle_string() == "(1 3 2)"

    def test_product_reads_left_to_right(self):
        # traverse (1 2) first, then (2 3)
        assert (T12 * T23).cycle_string() == "(1 3 2)"
        assert (T23 * T12).cycle_string() == "(1 2 3)"

    def test_inverse(self):
        p = T12 * T23
        assert (p * p.inverse()).is_identity
        assert p.inverse().cycle_string() == "(1 2 3)"

    def test_conjugate_by(self):
        assert T12.conjugate_by(T23) == Permutation.from_cycles(3, [(1, 3)])

    def test_cycle_type_and_ramification(self):
        p = Permutation.from_cycles(5, [(1, 2), (3, 4, 5)])
        assert p.cycle_type() == (3, 2)
        assert p.ramification() == 3
        assert Permutation.identity(4).cycle_type() == (1, 1, 1, 1)

    def test_identity_string(self):
        assert str(Permutation.identity(3)) == "()"

    def test_degree_mismatch(self):
        with pytest.raises(ValueError, match="Degree mismatch"):
            T12 * Permutation.identity(4)

    def test_transposition(self):
        assert Permutation.transposition(3, 0, 2).cycle_string() == "(1 3)"


class TestGroupHelpers:
    def test_product_of_nothing_is_identity(self):
        assert product([], 3).is_identity

    def test_product_order(self):
        assert product([T12, T23], 3) == T12 * T23

    def test_transitivity(self):
        assert not is_transitive([T12], 3)
        assert is_transitive([T12, T23], 3)
        assert is_transitive([], 1)

    def test_relabeling_found(self):
        sigma = equivalent_up_to_relabeling([T12], [T23])
        assert sigma is not None
        assert T12.conjugate_by(sigma) == T23

    def test_relabeling_respects_cycle_type(self):
        assert equivalent_up_to_relabeling([T12], [T12 * T23]) is None

    def test_relabeling_degree_limit(self):
        big = Permutation.identity(9)
        with pytest.raises(ValueError, match="d ≤ 8"):
            equivalent_up_to_relabeling([big], [big])
