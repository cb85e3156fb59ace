import pytest

from linkweave.errors import SameApex, ValuesOutOfRange
from linkweave.graphs import enumerate_cycles, oriented_triangle, triangle_decomposition
from linkweave.stars import (
    LinkMap,
    Star,
    all_stars,
    common_apex,
    detect_star,
    format_star,
    mutual_orientation,
    parse_star,
)


class TestStarBasics:
    def test_triangle_count_k6(self):
        s = Star(6, 0, {1, 2}, {3, 4, 5})
        assert len(s.triangles()) == 6

    def test_fan_k3_single_triangle(self):
        s = Star(3, 0, {1}, {2})
        assert s.triangles() == {oriented_triangle(0, 1, 2)}

    def test_product_count_k8(self):
        s = Star(8, 0, {1, 2, 3}, {4, 5, 6, 7})
        assert len(s.triangles()) == 12

    def test_reverse_swaps_sets(self):
        s = Star(6, 0, {1, 2}, {3, 4, 5})
        r = s.reverse()
        assert r.out_set == frozenset({3, 4, 5})
        assert r.in_set == frozenset({1, 2})

    def test_reverse_is_involution(self):
        for s in all_stars(5):
            assert s.reverse().reverse() == s

    def test_reverse_reverses_triangles(self):
        from linkweave.graphs import reverse_triangle

        for s in all_stars(5):
            assert s.reverse().triangles() == {
                reverse_triangle(t) for t in s.triangles()
            }

    def test_partition_enforced(self):
        with pytest.raises(ValueError):
            Star(5, 0, {1, 2}, {2, 3, 4})
        with pytest.raises(ValueError):
            Star(5, 0, {1, 2, 3, 4}, set())

    def test_fan_canonical_apex_is_smaller_axis_vertex(self):
        # 3{1}I over K5 equals 1 I {3}; the stored apex must be 1
        s = Star(5, 3, {1}, {0, 2, 4})
        assert s.apex == 1
        assert s == Star(5, 1, {0, 2, 4}, {3})

    def test_two_apex_fan_equality(self):
        # p{q}I and qI{p} are the same star
        assert Star(5, 0, {1}, {2, 3, 4}) == Star(5, 1, {2, 3, 4}, {0})

    def test_literal_round_trip(self):
        s = Star(6, 0, {1, 2}, {3, 4, 5})
        assert format_star(s) == "0|1 2|3 4 5"
        assert parse_star("0|1 2|3 4 5") == s


class TestDetectStar:
    def test_round_trip_all_stars_up_to_k7(self):
        for n in range(3, 8):
            for s in all_stars(n):
                assert detect_star(s.indicator()) == s

    def test_zero_map_is_no_star(self):
        assert detect_star(LinkMap(6)) is None

    def test_disjoint_support_is_no_star(self):
        m = LinkMap(6)
        m.set((0, 1, 2), 1)
        m.set((3, 4, 5), 1)
        assert detect_star(m) is None

    def test_disjoint_support_no_star_by_brute_force(self):
        m = LinkMap(6)
        m.set((0, 1, 2), 1)
        m.set((3, 4, 5), 1)
        assert all(s.indicator() != m for s in all_stars(6))

    def test_missing_triangle_is_no_star(self):
        s = Star(6, 0, {1, 2}, {3, 4, 5})
        m = s.indicator()
        m.set((0, 1, 3), 0)
        assert detect_star(m) is None

    def test_strong_values_rejected(self):
        m = LinkMap(5)
        m.set((0, 1, 2), 2)
        with pytest.raises(ValuesOutOfRange):
            detect_star(m)


class TestMutualOrientation:
    def test_already_mutually_oriented(self):
        s1 = Star(5, 0, {1, 2}, {3, 4})
        s2 = Star(5, 1, {0, 2}, {3, 4})
        assert mutual_orientation(s1, s2) == (1, 1)

    def test_swap_forces_sign(self):
        s1 = Star(5, 0, {1, 2}, {3, 4})
        s2 = Star(5, 1, {3, 4}, {0, 2})
        assert mutual_orientation(s1, s2) == (1, -1)

    def test_same_apex_rejected(self):
        s1 = Star(5, 0, {1, 2}, {3, 4})
        s2 = Star(5, 0, {1, 3}, {2, 4})
        with pytest.raises(SameApex):
            mutual_orientation(s1, s2)

    def test_uniqueness_over_k5_pairs(self):
        stars = all_stars(5)
        for s1 in stars:
            for s2 in stars:
                if s1.apex == s2.apex:
                    continue
                workable = []
                for e1 in (1, -1):
                    for e2 in (1, -1):
                        t1 = s1 if e1 == 1 else s1.reverse()
                        t2 = s2 if e2 == 1 else s2.reverse()
                        if t2.apex in t1.out_set and t1.apex in t2.out_set:
                            workable.append((e1, e2))
                assert len(workable) == 1
                assert workable[0] == mutual_orientation(s1, s2)


class TestCommonApex:
    def test_equal_apexes(self):
        s1 = Star(6, 2, {0, 1}, {3, 4, 5})
        s2 = Star(6, 2, {0, 3}, {1, 4, 5})
        assert common_apex(s1, s2) == 2

    def test_fan_axis_contains_other_apex(self):
        # s1 is a fan with axis (0, 1); s2 is proper with apex 1
        s1 = Star(5, 0, {1}, {2, 3, 4})
        s2 = Star(5, 1, {0, 3}, {2, 4})
        assert common_apex(s1, s2) == 1

    def test_two_fans_meeting_at_axis_vertex(self):
        # fans with axes (0, 2) and (1, 2) share the apex 2
        s1 = Star(5, 0, {2}, {1, 3, 4})
        s2 = Star(5, 1, {2}, {0, 3, 4})
        assert common_apex(s1, s2) == 2

    def test_proper_stars_with_distinct_apexes(self):
        s1 = Star(6, 0, {1, 2}, {3, 4, 5})
        s2 = Star(6, 1, {0, 2}, {3, 4, 5})
        assert common_apex(s1, s2) is None

    def test_disjoint_fan_axes(self):
        s1 = Star(6, 0, {1}, {2, 3, 4, 5})
        s2 = Star(6, 2, {3}, {0, 1, 4, 5})
        assert common_apex(s1, s2) is None


class TestStarImpliesWeak:
    def test_decomposition_sums_bounded_by_one(self):
        # for every star and every cycle, the fan-decomposed link value has
        # absolute value at most 1, and some cycle achieves 1
        for n in (4, 5):
            cycles = enumerate_cycles(n)
            for s in all_stars(n):
                ind = s.indicator()
                best = 0
                for cycle in cycles:
                    total = sum(
                        coeff * ind.get(t)
                        for t, coeff in triangle_decomposition(cycle)
                    )
                    assert abs(total) <= 1
                    best = max(best, abs(total))
                assert best == 1
