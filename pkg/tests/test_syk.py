import itertools
from fractions import Fraction

import pytest

from gemkit import fixtures as fx
from gemkit.core import GraphError, elementary_melon, from_permutations
from gemkit.pairings import CapExceeded, covering, enumerate_pairings, lm
from gemkit.syk import (
    CHAIN_KINDS,
    SykMap,
    amplitude_exponent,
    chain_gf,
    chain_walk_counts,
    classify_order,
    composite_gf,
    count_by_order,
    labeled_covering,
    order_of_covering,
    prune,
    scheme_of,
    skeleton,
    to_scheme,
    tree_series,
)

from conftest import random_perm


def brute_walks(D: int, m: int, same: bool) -> int:
    """Color sequences c_0..c_m, neighbours distinct, c_0 = 0 and c_m fixed."""
    end = 0 if same else 1
    total = 0
    for mid in itertools.product(range(D), repeat=m - 1):
        seq = (0,) + mid + (end,)
        if all(a != b for a, b in zip(seq, seq[1:])):
            total += 1
    return total


class TestChains:
    @pytest.mark.parametrize("D", [3, 4, 5])
    def test_walk_formula(self, D):
        for m in range(1, 7):
            assert chain_walk_counts("bb-ii", D, m) == brute_walks(D, m, True)
            assert chain_walk_counts("bb-ij", D, m) == brute_walks(D, m, False)

    @pytest.mark.parametrize("D", [3, 4])
    def test_colored_chain_coefficients(self, D):
        n = 7
        ii, ij = chain_gf("bb-ii", D, n), chain_gf("bb-ij", D, n)
        for m in range(1, n):
            assert ii.get((m, m - 1), 0) == brute_walks(D, m, True)
            assert ij.get((m, m - 1), 0) == brute_walks(D, m, False)

    def test_shifted_kinds(self):
        base = chain_gf("bb-ij", 3, 5)
        assert chain_gf("ww-ij", 3, 5) == {(a, b + 2): c for (a, b), c in base.items()}
        assert chain_gf("wb-ii", 3, 5)[0, 0] == 1
        assert (0, 1) not in chain_gf("ww-ii*", 3, 5)

    def test_every_kind_known(self):
        for kind in CHAIN_KINDS:
            assert chain_gf(kind, 4, 4)
        with pytest.raises(GraphError):
            chain_gf("bw-xx", 3, 3)
        with pytest.raises(GraphError):
            chain_walk_counts("ww-ii", 3, 2)


def test_tree_series_catalan_like():
    # 1 + z G^3: ternary trees
    assert tree_series(3, 6) == [1, 1, 3, 12, 55, 273, 1428]
    assert tree_series(2, 5) == [1, 1, 2, 5, 14, 42]


class TestComposites:
    def test_lo_four_point(self):
        assert composite_gf("G4_LO", 3, 5) == [0, 6, 42, 270, 1716, 10920]

    def test_corrected_nlo_matches_count(self):
        got = count_by_order(3, 1, 1, 4)
        series = composite_gf("G2_NLO_corrected", 3, 4)
        assert [got[p] for p in (2, 3, 4)] == series[2:5]

    def test_unknown(self):
        with pytest.raises(ValueError):
            composite_gf("G6", 3, 3)


class TestCounting:
    def test_one_mark_leading_order_is_tree_count(self):
        got = count_by_order(3, 0, 1, 4, first_color=1)
        assert [got[p] for p in (1, 2, 3, 4)] == tree_series(3, 4)[1:]

    def test_two_marks_leading_order(self):
        got = count_by_order(3, 0, 2, 4)
        assert got == {1: 6, 2: 42, 3: 270, 4: 1716}
        assert all(isinstance(v, Fraction) for v in got.values())

    def test_cap(self):
        with pytest.raises(CapExceeded):
            count_by_order(3, 0, 1, 7)


class TestOrders:
    def test_melonic_covering_has_order_zero(self):
        b = fx.quartic_melonic(3)
        orders = sorted(classify_order(b, p) for p in enumerate_pairings(b))
        assert orders[0] == 0

    def test_k33_orders_match_lm(self):
        b = fx.k33()
        for p in enumerate_pairings(b):
            assert classify_order(b, p) == lm(b, p)
        assert order_of_covering(covering(b, fx.k33_optimal_pairing())) == 1

    def test_rejects_non_bipartite(self):
        g = elementary_melon(3).with_edges(elementary_melon(3).edges[:-1])
        with pytest.raises(GraphError):
            order_of_covering(g)


class TestSchemes:
    def test_pruning_keeps_circuit_rank(self, rng):
        for _ in range(100):
            p = rng.randint(1, 5)
            g = labeled_covering(3, [random_perm(rng, p) for _ in range(3)])
            if not g.is_connected():
                continue
            colored = [k for k, e in enumerate(g.edges) if e[2] != 0]
            marks = rng.sample(colored, rng.randint(1, 2))
            sk = skeleton(g, marks)
            pr = prune(sk)
            sc = to_scheme(pr)
            assert sk.circuit_rank() == pr.circuit_rank() == sc.circuit_rank()
            assert sc.n_marks() == len(marks)
            assert all(d != 1 or k for d, k in zip(pr.degrees(), pr.marks))

    def test_leading_order_two_point_schemes_are_small(self, rng):
        seen = 0
        for _ in range(300):
            p = rng.randint(1, 4)
            g = labeled_covering(3, [random_perm(rng, p) for _ in range(3)])
            if not g.is_connected():
                continue
            colored = [k for k, e in enumerate(g.edges) if e[2] != 0]
            marks = rng.sample(colored, 2)
            if amplitude_exponent(g, marks) != -1:
                continue
            sc = scheme_of(g, marks)
            assert sc.circuit_rank() == 0
            assert sc.n_nodes <= 2 and len(sc.edges) <= 1
            seen += 1
        assert seen > 0

    def test_vacuum_has_no_scheme(self):
        g = covering(fx.k33(), fx.k33_optimal_pairing())
        with pytest.raises(GraphError):
            to_scheme(prune(skeleton(g)))

    def test_unpruned_rejected(self):
        leafy = SykMap((-1, 1, 2), ((0, 1), (0, 2)), (1, 0, 0), (0, 0))
        with pytest.raises(GraphError):
            to_scheme(leafy)
        assert prune(leafy).n_nodes == 1

    def test_color_zero_mark_rejected(self):
        g = labeled_covering(3, [[0], [0], [0]])
        zero = [k for k, e in enumerate(g.edges) if e[2] == 0]
        with pytest.raises(GraphError):
            skeleton(g, zero)


def test_amplitude_of_melon():
    g = from_permutations(3, {c: [0] for c in range(4)})
    colored = [k for k, e in enumerate(g.edges) if e[2] != 0]
    assert amplitude_exponent(g, colored[:1]) == 0
