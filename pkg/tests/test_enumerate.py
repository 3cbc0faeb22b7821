from fractions import Fraction
from math import factorial

import pytest

from gemkit import fixtures as fx
from gemkit.core import elementary_melon, zero_score
from gemkit.enumerate import (
    GluingSpec,
    SeriesSpec,
    bridge_two_bond_check,
    check_singular_point,
    count_gluings,
    decompose,
    empirical_tilde_a,
    enumerate_gluings,
    maximal_level,
    rooted_melonic_count,
    series_residual,
    series_solve,
    singular_point,
    tree_like_check,
    verify_linear_bound,
)
from gemkit.core import GraphError
from gemkit.pairings import CapExceeded, covering, optimal_pairings


def melon_bubble(D: int = 3):
    return elementary_melon(D, with_color0=False)


class TestGluings:
    def test_single_melon(self):
        spec = GluingSpec([melon_bubble()], 1)
        gluings = list(enumerate_gluings(spec))
        assert len(gluings) == 1
        assert zero_score(gluings[0]) == 3

    @pytest.mark.parametrize("b", [1, 2, 3])
    def test_labeled_count_is_factorial(self, b):
        q = fx.quartic_melonic(3)
        spec = GluingSpec([q], b, connected=False)
        assert count_gluings(spec, b) == factorial(b * q.n_vertices // 2)

    def test_rooted_is_between_unlabeled_and_labeled(self):
        spec = GluingSpec([fx.quartic_melonic(3)], 2)
        un = count_gluings(GluingSpec(spec.bubbles, 2, rooting="unlabeled"), 2)
        ro = count_gluings(GluingSpec(spec.bubbles, 2, rooting="rooted-edge"), 2)
        la = count_gluings(spec, 2)
        assert un <= ro <= la

    def test_cap(self):
        with pytest.raises(CapExceeded):
            list(enumerate_gluings(GluingSpec([fx.octahedron()], 2, cap=6)))

    def test_invalid_gluing_options(self):
        with pytest.raises(GraphError):
            GluingSpec([fx.k33()], 1, rooting="sideways")
        with pytest.raises(GraphError):
            GluingSpec([fx.k33(), fx.k334_1()], 1)


class TestMaximal:
    def test_k33(self):
        assert [maximal_level(GluingSpec([fx.k33()], 2), b).phi0_max for b in (1, 2)] == [6, 9]

    def test_melonic_estimate(self):
        est = empirical_tilde_a(GluingSpec([fx.k_cyclic(3, 1, 2)], 2))
        assert est.estimate == 2  # (D-1)(p-1)
        assert est.attained_at[0] == 1
        assert est.tree_attained

    def test_d6_pair_beats_trees(self):
        est = empirical_tilde_a(GluingSpec([fx.k336(), fx.k336_bar()], 2))
        assert est.estimate == 6
        assert est.attained_at == [2]
        assert not est.tree_attained

    def test_linear_bound(self):
        spec = GluingSpec([fx.octahedron()], 2)
        ok = verify_linear_bound(spec, Fraction(5))
        assert ok.passed and ok.saturating
        bad = verify_linear_bound(spec, Fraction(4))
        assert not bad.passed
        assert zero_score(bad.counterexample) > 3 + 4

    def test_melonic_bound_saturated_by_melons(self):
        cert = verify_linear_bound(GluingSpec([fx.quartic_melonic(3)], 2), Fraction(2))
        assert cert.passed
        assert all(zero_score(g) == 3 + 2 * len(g.black) // 4 for g in cert.saturating)


class TestTreeLike:
    def test_octahedra(self):
        o = fx.octahedron()
        patterns = [covering(o, om) for om in optimal_pairings(o)[1]]
        assert tree_like_check(GluingSpec([o], 2), patterns).ok

    def test_k33_needs_theta(self):
        spec = GluingSpec([fx.k33()], 2)
        assert not tree_like_check(spec, fx.k33_coverings()).ok
        assert tree_like_check(spec, fx.k33_coverings() + fx.k33_theta_patterns()).ok

    def test_pattern_is_its_own_decomposition(self):
        g = fx.k33_coverings()[0]
        from gemkit.core import canonical_form

        d = decompose(g, {canonical_form(g)})
        assert d.ok and len(d.pieces) == 1

    def test_bridge_structure(self):
        lvl = maximal_level(GluingSpec([fx.octahedron()], 2), 2)
        assert all(bridge_two_bond_check(g) for g in lvl.witnesses)


class TestSeries:
    def test_parse(self):
        assert SeriesSpec.parse("G=1+3zG^3+3z^2G^6").terms == ((3, 1, 3), (3, 2, 6))
        assert SeriesSpec.parse("1 + z*G^4").terms == ((1, 1, 4),)
        with pytest.raises(GraphError):
            SeriesSpec.parse("2+zG")

    def test_fuss_catalan(self):
        assert series_solve(SeriesSpec.parse("1+zG^4"), 4) == [1, 1, 4, 22, 140]

    def test_octahedra(self):
        assert series_solve(SeriesSpec.parse("1+3zG^4"), 3) == [1, 3, 36, 594]

    def test_k33_by_hand(self):
        c = series_solve(SeriesSpec.parse("1+3zG^3+3z^2G^6"), 2)
        assert c[1] == 3 and c[2] == 3 * (3 * 3) + 3

    def test_residual_vanishes(self):
        spec = SeriesSpec.parse("1+2zG^3+z^3G^2")
        assert set(series_residual(spec, series_solve(spec, 25))) == {0}

    def test_singular_point(self):
        spec = SeriesSpec.parse("1+3zG^4")
        z, g = singular_point(spec)
        assert (z, g) == (Fraction(9, 256), Fraction(4, 3))
        assert check_singular_point(spec, z, g)
        assert not check_singular_point(spec, z + Fraction(1, 1000), g)

    def test_big_integers(self):
        c = series_solve(SeriesSpec.parse("1+zG^2"), 60)
        assert c[60] == factorial(120) // (factorial(60) * factorial(61))


def test_rooted_melonic_small():
    assert [rooted_melonic_count(3, k) for k in (1, 2, 3)] == [1, 4, 22]
