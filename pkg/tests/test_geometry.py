import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba import (
    Arc,
    GammaParams,
    Label,
    contains,
    dirichlet_measure,
    make_gamma,
    make_two_component,
    make_uniform,
    partition_from_pairs,
    pure_dirichlet,
    pure_neumann,
)
from zaremba.geometry import partition_from_text, partition_to_text

PI = math.pi


class TestGamma:
    def test_beta_zero_is_single_arc(self):
        p = make_gamma(F(1), F(0))
        assert p.n_components == 1
        assert p.dirichlet_arcs[0].length_pi == F(1)
        # centered at angle 0
        assert p.dirichlet_arcs[0].center_pi % 2 == 0

    def test_beta_max_is_two_opposite_arcs(self):
        p = make_gamma(F(1), F(1, 4))
        assert p.n_components == 2
        a1, a2 = p.dirichlet_arcs
        assert a1.length_pi == a2.length_pi == F(1, 2)
        # diametrically opposite
        assert (a2.center_pi - a1.center_pi) % 2 == F(1)

    def test_half_pi_family_member(self):
        # ell = pi/2, beta = pi/8: arcs pi/4 each, gaps pi/4 and 5pi/4
        p = make_gamma(F(1, 2), F(1, 8))
        assert [a.length_pi for a in p.dirichlet_arcs] == [F(1, 4), F(1, 4)]
        assert sorted(g.length_pi for g in p.gaps()) == [F(1, 4), F(5, 4)]

    def test_measure_preserved(self):
        for beta in (F(0), F(1, 16), F(1, 8), F(3, 16), F(1, 4)):
            p = make_gamma(F(1), beta)
            assert abs(dirichlet_measure(p) - PI) < 1e-12

    def test_beta_out_of_range(self):
        with pytest.raises(ValueError):
            make_gamma(F(1), F(1, 4) + F(1, 100))
        with pytest.raises(ValueError):
            make_gamma(F(1), -F(1, 100))
        with pytest.raises(ValueError):
            GammaParams(F(2), F(0))

    def test_equals_uniform_two_up_to_rotation(self):
        p = make_gamma(F(1), F(1, 4))
        u = make_uniform(2, F(1))
        delta = p.rotation_onto(u)
        assert delta is not None
        rotated = p.rotated(delta)
        # pointwise agreement on a fine angular grid
        for i in range(10_000):
            theta = 2 * PI * i / 10_000
            assert rotated.contains(theta) == u.contains(theta)

    @given(
        ell=st.fractions(min_value=F(1, 16), max_value=F(31, 16)),
        t=st.fractions(min_value=0, max_value=1),
    )
    @settings(max_examples=60, deadline=None)
    def test_measure_and_reflection_invariance(self, ell, t):
        beta = (2 - ell) / 4 * t
        p = make_gamma(ell, beta)
        assert abs(p.measure - float(ell) * PI) < 1e-12
        assert p.reflected().equal(p)

    @given(theta=st.floats(min_value=0.0, max_value=2 * PI, allow_nan=False))
    @settings(max_examples=80, deadline=None)
    def test_reflection_pointwise(self, theta):
        p = make_gamma(F(1), F(3, 16))
        assert p.contains(theta) == p.contains(-theta)


class TestUniform:
    def test_single_arc(self):
        p = make_uniform(1, F(1))
        assert p.n_components == 1
        assert p.dirichlet_arcs[0].length_pi == F(1)

    def test_three_arcs_spacing(self):
        p = make_uniform(3, F(1))
        assert p.n_components == 3
        assert all(a.length_pi == F(1, 3) for a in p.dirichlet_arcs)
        centers = [a.center_pi for a in p.dirichlet_arcs]
        assert (centers[1] - centers[0]) % 2 == F(2, 3)
        assert (centers[2] - centers[1]) % 2 == F(2, 3)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_rotation_invariance(self, n):
        p = make_uniform(n, F(1))
        assert p.rotated(F(2, n)).equal(p)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_measure(self, n):
        assert abs(dirichlet_measure(make_uniform(n, F(3, 2))) - 1.5 * PI) < 1e-12

    def test_bad_n(self):
        with pytest.raises(ValueError):
            make_uniform(0, F(1))


class TestTwoComponent:
    def test_symmetric_case_is_gamma2(self):
        p = make_two_component(F(1, 2), F(1, 2), F(1))
        assert p.equal(make_gamma(F(1), F(1, 4)))

    def test_degenerate_single_component(self):
        p = make_two_component(F(0), F(1, 4), F(1))
        assert p.n_components == 1
        assert p.rotation_onto(make_gamma(F(1), F(0))) is not None

    def test_zero_gap_merges(self):
        p = make_two_component(F(1, 2), F(0), F(1))
        assert p.n_components == 1
        assert abs(p.measure - PI) < 1e-12

    def test_generic_lengths(self):
        p = make_two_component(F(1, 3), F(1, 3), F(1))
        assert sorted(a.length_pi for a in p.dirichlet_arcs) == [F(1, 3), F(2, 3)]
        assert sorted(g.length_pi for g in p.gaps()) == [F(1, 3), F(2, 3)]
        assert abs(dirichlet_measure(p) - PI) < 1e-12

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            make_two_component(F(2, 3), F(1, 4), F(1))  # a > ell/2
        with pytest.raises(ValueError):
            make_two_component(F(1, 4), F(3, 4), F(1))  # gap_b > (2pi-ell)/2


class TestContains:
    def test_examples(self):
        p = make_gamma(F(1), F(1, 4))
        assert contains(p, PI / 2) == Label.DIRICHLET
        assert contains(p, 0.0) == Label.NEUMANN
        assert contains(p, PI / 4) == Label.ENDPOINT

    def test_full_and_empty(self):
        assert contains(pure_dirichlet(), 1.234) == Label.DIRICHLET
        assert contains(pure_neumann(), 1.234) == Label.NEUMANN

    def test_fraction_query(self):
        p = make_gamma(F(1), F(1, 4))
        assert contains(p, F(1, 4)) == Label.ENDPOINT
        assert contains(p, F(1, 2)) == Label.DIRICHLET


class TestCanonicalForm:
    def test_touching_arcs_merge(self):
        p = partition_from_pairs([(F(0), F(1, 4)), (F(1, 4), F(1, 4))])
        assert p.n_components == 1
        assert p.dirichlet_arcs[0].length_pi == F(1, 2)

    def test_wraparound_merge(self):
        p = partition_from_pairs([(F(7, 4), F(1, 4)), (F(0), F(1, 4))])
        assert p.n_components == 1
        assert p.dirichlet_arcs[0].start_pi == F(7, 4)

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            partition_from_pairs([(F(0), F(1, 2)), (F(1, 4), F(1, 2))])

    def test_float_noise_length_dropped(self):
        p = partition_from_pairs([(F(0), F(1, 4)), (3.0, 1e-15)])
        assert p.n_components == 1

    def test_tiny_exact_length_kept(self):
        p = partition_from_pairs([(F(0), F(1, 4)), (F(1), F(1, 10**9))])
        assert p.n_components == 2

    def test_full_cover_collapses(self):
        p = partition_from_pairs([(F(0), F(1)), (F(1), F(1))])
        assert p.is_full

    def test_component_counts(self):
        assert make_gamma(F(1), F(0)).n_components == 1
        assert make_gamma(F(1), F(1, 8)).n_components == 2
        for n in (1, 2, 3, 5):
            assert make_uniform(n, F(1)).n_components == n


class TestSerialization:
    def test_round_trip(self):
        p = make_two_component(F(1, 3), F(1, 5), F(1)).rotated(0.123456789)
        text = partition_to_text(p)
        q = partition_from_text(text)
        assert q.n_components == p.n_components
        for a, b in zip(p.dirichlet_arcs, q.dirichlet_arcs):
            assert a.start == pytest.approx(b.start, abs=1e-15)
            assert a.length == pytest.approx(b.length, abs=1e-15)

    def test_empty(self):
        assert partition_from_text(partition_to_text(pure_neumann())).is_empty


class TestArc:
    def test_invalid_length(self):
        with pytest.raises(ValueError):
            Arc(F(0), F(0))
        with pytest.raises(ValueError):
            Arc(F(0), F(5, 2))

    def test_normalization(self):
        a = Arc(F(9, 4), F(1, 2))
        assert a.start_pi == F(1, 4)
