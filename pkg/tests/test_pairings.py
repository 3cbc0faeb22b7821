from fractions import Fraction

import pytest

from gemkit import fixtures as fx
from gemkit.core import from_permutations, is_melonic, zero_score
from gemkit.pairings import (
    CapExceeded,
    check_pairing,
    coefficients,
    coefficients_nonconnected,
    contracted_graph,
    covering,
    delta0,
    enumerate_pairings,
    forced_pairs,
    lm,
    optimal_pairings,
    zero_score_of_covering,
)


class TestK33:
    def test_pairing_counts(self):
        b = fx.k33()
        assert len(list(enumerate_pairings(b))) == 6
        best, opt = optimal_pairings(b)
        assert best == 6
        assert len(opt) == 3

    def test_fast_score_matches_covering(self):
        b = fx.k33()
        for p in enumerate_pairings(b):
            assert zero_score_of_covering(b, p) == zero_score(covering(b, p))

    def test_coefficients(self):
        r = coefficients(fx.k33())
        assert (r.tilde_a, r.a, r.s, r.delta) == (3, 1, 1, Fraction(1, 2))

    def test_lm_of_optimal(self):
        b = fx.k33()
        assert lm(b, fx.k33_optimal_pairing()) == 1


@pytest.mark.parametrize(
    "name,phi0,tilde_a,a,s,delta",
    [
        ("octahedron", 8, 5, Fraction(11, 8), 1, Fraction(1, 8)),
        ("toroidal_k4", 8, 5, Fraction(9, 8), 1, Fraction(3, 8)),
        ("k334_1", 9, 5, Fraction(7, 3), 1, Fraction(2, 3)),
        ("meander1", 8, 4, Fraction(7, 3), 2, Fraction(2, 3)),
    ],
)
def test_fixture_coefficients(name, phi0, tilde_a, a, s, delta):
    r = coefficients(getattr(fx, name)())
    assert (r.phi0_opt, r.tilde_a, r.a, r.s, r.delta) == (phi0, tilde_a, a, s, delta)


def test_quartic_melonic_forced_pair():
    b = fx.quartic_melonic(3)
    assert len(forced_pairs(b)) == 2
    r = coefficients(b)
    assert (r.a, r.s, r.delta) == (Fraction(3, 2), 0, 0)


def test_melonic_bubble_has_zero_order():
    b = fx.quartic_melonic(3)
    _, opt = optimal_pairings(b)
    assert delta0(b, opt[0]) == 0
    assert is_melonic(covering(b, opt[0]))


def test_contracted_graph_color_cycles():
    b = fx.k33()
    cg = contracted_graph(b, fx.k33_optimal_pairing())
    assert cg.n_nodes == 3
    assert sum(cg.color_cycles(c) for c in (1, 2, 3)) >= 3


def test_check_pairing_rejects_bad_input():
    b = fx.k33()
    blacks, whites = b.blacks(), b.whites()
    with pytest.raises(ValueError):
        check_pairing(b, [(blacks[0], whites[0])])
    with pytest.raises(ValueError):
        check_pairing(b, [(blacks[0], whites[0]), (blacks[1], whites[0]), (blacks[2], whites[2])])


def test_cap():
    p = 5
    g = from_permutations(3, {1: list(range(p)), 2: [1, 2, 3, 4, 0], 3: [2, 4, 1, 0, 3]})
    with pytest.raises(CapExceeded):
        optimal_pairings(g, cap=3)


def test_nonconnected_composition():
    r = coefficients(fx.k33())
    both = coefficients_nonconnected([r, r], 3)
    assert both.tilde_a == 3 + 2 * r.tilde_a
    assert both.s == 2 * r.s - 1
    assert both.a == (3 + 12 * r.a) / 12
    with pytest.raises(ValueError):
        coefficients_nonconnected([], 3)


def test_unknown_mode():
    with pytest.raises(ValueError):
        coefficients(fx.k33(), mode="guess")
