import math
import random

import pytest

from linkweave import geom
from linkweave.errors import (
    MutualIntersection,
    NonGenericPair,
    PrecisionWarning,
    SelfIntersection,
)
from linkweave.geom import (
    PLCurve,
    gauss_linking_estimate,
    linking_number,
    make_generic,
    parse_curve,
    format_curve,
    rat,
    signed_crossings,
    validate_disjoint,
)

from conftest import (
    apply_matrix,
    doubled_pair,
    hopf_pair,
    perturb_curve,
    random_rational_rotation,
    split_pair,
    square_xy,
)


class TestValidation:
    def test_parallel_plane_squares_are_disjoint(self):
        a = square_xy()
        b = square_xy().translate(0, 0, 1)
        validate_disjoint(a, b)  # no exception

    def test_repeated_vertex_is_self_intersection(self):
        bad = PLCurve([(0, 0, 0), (1, 0, 0), (1, 0, 0), (1, 1, 0)])
        with pytest.raises(SelfIntersection):
            validate_disjoint(bad, square_xy().translate(10, 0, 0))

    def test_shared_point_is_mutual_intersection(self):
        a = square_xy()
        # second square touches the first at (1, 1, 0)
        b = PLCurve([(1, 1, 0), (3, 1, 0), (3, 3, 0), (1, 3, 0)])
        with pytest.raises(MutualIntersection):
            validate_disjoint(a, b)

    def test_figure_eight_is_self_intersecting(self):
        bad = PLCurve([(0, 0, 0), (2, 2, 0), (2, 0, 0), (0, 2, 0)])
        with pytest.raises(SelfIntersection):
            geom.validate_simple(bad)


class TestMakeGeneric:
    def test_already_generic_pair_needs_no_shear(self):
        a, b = split_pair()
        assert make_generic(a, b) == 0

    def test_vertical_segment_forces_shear(self):
        a, b = hopf_pair()  # b has vertical segments
        assert make_generic(a, b) > 0

    def test_perturbed_hopf_is_generic_at_zero(self):
        # random rational perturbations destroy the axis-aligned degeneracies
        rng = random.Random(7)
        for _ in range(100):
            a, b = hopf_pair()
            a = perturb_curve(a, rng, denom=12289, spread=4096)
            b = perturb_curve(b, rng, denom=24593, spread=4096)
            assert make_generic(a, b) == 0


class TestSignedCrossings:
    def test_split_pair_has_no_crossings(self):
        a, b = split_pair()
        s = make_generic(a, b)
        assert signed_crossings(a.sheared(s), b.sheared(s)) == []

    def test_hopf_has_two_equal_sign_crossings(self):
        a, b = hopf_pair()
        s = make_generic(a, b)
        recs = signed_crossings(a.sheared(s), b.sheared(s))
        assert len(recs) == 2
        assert recs[0].sign == recs[1].sign

    def test_doubled_thread_has_four_crossings_summing_four(self):
        a, b = doubled_pair()
        s = make_generic(a, b)
        recs = signed_crossings(a.sheared(s), b.sheared(s))
        assert len(recs) == 4
        assert abs(sum(r.sign for r in recs)) == 4

    def test_nongeneric_pair_is_reported(self):
        a, b = hopf_pair()  # vertical segments degenerate at shear 0
        with pytest.raises(NonGenericPair):
            signed_crossings(a, b)


class TestLinkingNumber:
    def test_split(self):
        assert linking_number(*split_pair()) == 0

    def test_hopf(self):
        assert abs(linking_number(*hopf_pair())) == 1

    def test_doubled(self):
        assert abs(linking_number(*doubled_pair())) == 2

    def test_orientation_reversal_antisymmetry(self):
        for a, b in (hopf_pair(), doubled_pair(), split_pair()):
            base = linking_number(a, b)
            assert linking_number(a.reverse(), b) == -base
            assert linking_number(a, b.reverse()) == -base

    def test_symmetry(self):
        for a, b in (hopf_pair(), doubled_pair(), split_pair()):
            assert linking_number(a, b) == linking_number(b, a)

    def test_projection_invariance(self, rng):
        a, b = hopf_pair()
        base = linking_number(a, b)
        for _ in range(20):
            m = random_rational_rotation(rng)
            ra, rb = apply_matrix(a, m), apply_matrix(b, m)
            s = rat(rng.randint(-3, 3), rng.randint(1, 5))
            ra, rb = ra.sheared(s), rb.sheared(s)
            assert linking_number(ra, rb) == base

    def test_crossing_parity_is_even(self, rng):
        for a, b in (hopf_pair(), doubled_pair(), split_pair()):
            for _ in range(5):
                m = random_rational_rotation(rng)
                ra, rb = apply_matrix(a, m), apply_matrix(b, m)
                s = make_generic(ra, rb)
                recs = signed_crossings(ra.sheared(s), rb.sheared(s))
                assert len(recs) % 2 == 0


class TestGaussOracle:
    def test_split(self):
        assert abs(gauss_linking_estimate(*split_pair())) < 0.25

    def test_hopf(self):
        a, b = hopf_pair()
        est = gauss_linking_estimate(a, b)
        assert abs(est - linking_number(a, b)) < 0.25

    def test_doubled(self):
        a, b = doubled_pair()
        est = gauss_linking_estimate(a, b)
        assert abs(est - linking_number(a, b)) < 0.25

    def test_oracle_agrees_on_perturbed_fixtures(self, rng):
        for make in (split_pair, hopf_pair, doubled_pair):
            for _ in range(10):
                a, b = make()
                a = perturb_curve(a, rng, denom=193)
                b = perturb_curve(b, rng, denom=181)
                exact = linking_number(a, b)
                assert round(gauss_linking_estimate(a, b)) == exact

    def test_nearly_coplanar_configuration_warns(self):
        # interleaved squares separated by ~1e-13 cannot be certified: every
        # segment quadruple is within rounding of coplanar
        eps = rat(1, 10**13)
        a = square_xy()
        b = PLCurve(
            [
                (0, 0, eps),
                (4, 0, 2 * eps),
                (4, 4, 3 * eps),
                (0, 4, 4 * eps),
            ]
        )
        with pytest.raises(PrecisionWarning):
            gauss_linking_estimate(a, b)


class TestCurveFiles:
    def test_round_trip_exact(self, tmp_path):
        a = PLCurve([("1/3", "-2/7", 0), (5, 1, "22/7"), (-1, "1/2", "-9/4")])
        text = format_curve(a)
        assert parse_curve(text) == a
        p = tmp_path / "curve.txt"
        geom.save_curve(a, p)
        assert geom.load_curve(p) == a

    def test_comments_and_blanks_ignored(self):
        text = "# header\n\n1 2 3\n4 5 6 # trailing\n7/2 8 9\n"
        c = parse_curve(text)
        assert len(c) == 3
        assert c.vertices[2][0] == rat(7, 2)
