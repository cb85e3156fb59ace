from itertools import permutations

import pytest

from linkweave.errors import BaseNotOnCycle, DuplicateVertex, OrderTooLarge
from linkweave.graphs import (
    boundary_quadruple,
    canonical_cycle,
    chain_edge_chain,
    cycle_count,
    cycle_edge_chain,
    enumerate_cycles,
    oriented_triangle,
    reverse_triangle,
    triangle_decomposition,
    triangle_orientation,
)


class TestOrientedTriangle:
    def test_canonical_is_rotation_invariant(self):
        assert oriented_triangle(2, 0, 1) == (0, 1, 2)
        assert oriented_triangle(1, 2, 0) == (0, 1, 2)
        assert oriented_triangle(0, 1, 2) == (0, 1, 2)

    def test_orientations_are_distinct(self):
        assert oriented_triangle(0, 1, 2) != oriented_triangle(0, 2, 1)
        assert reverse_triangle((0, 1, 2)) == (0, 2, 1)
        assert reverse_triangle(reverse_triangle((0, 1, 2))) == (0, 1, 2)

    def test_orientation_sign(self):
        assert triangle_orientation((0, 1, 2)) == 1
        assert triangle_orientation((0, 2, 1)) == -1

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(DuplicateVertex):
            oriented_triangle(0, 0, 1)


class TestEnumerateCycles:
    def test_k3_has_one_cycle(self):
        assert enumerate_cycles(3) == ((0, 1, 2),)

    def test_k4_has_seven_cycles(self):
        cycles = enumerate_cycles(4)
        assert len(cycles) == 7
        assert len([c for c in cycles if len(c) == 3]) == 4
        assert len([c for c in cycles if len(c) == 4]) == 3

    def test_k5_has_37_cycles(self):
        assert len(enumerate_cycles(5)) == 37

    def test_counts_match_closed_form(self):
        for n in range(3, 9):
            assert len(enumerate_cycles(n)) == cycle_count(n)

    def test_each_cycle_once_up_to_rotation(self):
        seen = set()
        for c in enumerate_cycles(6):
            canon = canonical_cycle(c)
            assert canon == c
            assert canon not in seen
            seen.add(canon)
            # the reversed cycle must not also be listed
            assert canonical_cycle(tuple(reversed(c))) not in seen

    def test_guard(self):
        with pytest.raises(OrderTooLarge):
            enumerate_cycles(10)


class TestTriangleDecomposition:
    def test_triangle_is_identity(self):
        assert triangle_decomposition((0, 1, 2), 0) == [((0, 1, 2), 1)]

    def test_square_fans_into_two(self):
        assert triangle_decomposition((0, 1, 2, 3), 0) == [
            ((0, 1, 2), 1),
            ((0, 2, 3), 1),
        ]

    def test_pentagon_fans_into_three(self):
        assert len(triangle_decomposition((0, 1, 2, 3, 4), 0)) == 3

    def test_base_not_on_cycle(self):
        with pytest.raises(BaseNotOnCycle):
            triangle_decomposition((0, 1, 2), 5)

    def test_boundary_matches_cycle_all_bases_all_cycles(self):
        for n in (4, 5, 6, 7):
            for cycle in enumerate_cycles(n):
                target = cycle_edge_chain(cycle)
                for base in cycle:
                    chain = triangle_decomposition(cycle, base)
                    assert chain_edge_chain(chain) == target


class TestBoundaryQuadruple:
    def test_labels(self):
        c0, c1, c2, c3 = boundary_quadruple(0, 1, 2, 3)
        assert c0 == oriented_triangle(1, 2, 3)
        assert c1 == oriented_triangle(3, 2, 0)
        assert c2 == oriented_triangle(0, 1, 3)
        assert c3 == oriented_triangle(2, 1, 0)

    def test_chain_sum_is_zero(self):
        quad = boundary_quadruple(0, 1, 2, 3)
        assert chain_edge_chain([(t, 1) for t in quad]) == {}

    def test_zero_chain_for_all_orderings(self):
        for perm in permutations((0, 1, 2, 3)):
            quad = boundary_quadruple(*perm)
            assert chain_edge_chain([(t, 1) for t in quad]) == {}

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateVertex):
            boundary_quadruple(0, 1, 1, 2)
