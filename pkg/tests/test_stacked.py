import itertools

import pytest

from gemkit import fixtures as fx
from gemkit.core import GraphError, disjoint_union, bicolored_cycles, canonical_form, score, zero_score
from gemkit.maps import connected_maps
from gemkit.pairings import covering, enumerate_pairings
from gemkit.stacked import (
    StackedMap,
    boundary_of_map,
    graph_boundary,
    hook,
    i2,
    is_tree,
    psi,
    psi0,
    psi_color,
    psi_inverse,
    quartic_decomposition,
    quartic_gluing,
    quartic_map,
    set_partitions,
    simplified_map,
    stacked_to_dot,
    submap_report,
    unhook,
)

from conftest import random_closed, random_perm


def _k33_covering():
    return covering(fx.k33(), fx.k33_optimal_pairing())


class TestPsi:
    def test_faces_are_bicolored_cycles(self, rng):
        for _ in range(50):
            g = random_closed(rng, 3, rng.randint(1, 5))
            pairing = [(b, w) for b, w, c in g.edges if c == 0]
            gamma = psi(g, pairing)
            for i, j in itertools.combinations(range(4), 2):
                assert gamma.faces(i, j) == len(bicolored_cycles(g, i, j))

    def test_round_trip(self):
        g = _k33_covering()
        for p in enumerate_pairings(g):
            h, q = psi_inverse(psi(g, p))
            assert canonical_form(h) == canonical_form(g)
            assert len(q) == len(p)

    def test_psi_color_rejects_bad_color(self):
        with pytest.raises(GraphError):
            psi_color(_k33_covering(), 9)


class TestPsi0:
    def test_zero_score_transport(self):
        g = _k33_covering()
        gamma = psi0(g)
        assert gamma.zero_score() == zero_score(g) == 6
        assert gamma.score() == score(g)

    def test_single_bubble_is_tree(self):
        assert is_tree(psi0(_k33_covering()))

    def test_straddling_pair_rejected(self):
        two = disjoint_union([_k33_covering(), _k33_covering()])
        b0 = two.blacks()[0]
        w_far = two.whites()[-1]
        pairing = [(b0, w_far)] + [(b, w) for b, w, c in two.edges if c == 1][1:]
        with pytest.raises(GraphError):
            psi0(two, pairing)

    def test_submap_report(self):
        rep = submap_report(psi0(_k33_covering()))
        assert sum(rep.faces.values()) == 6
        assert rep.projected_rank == 0


class TestUnhook:
    def test_law_and_inverse(self, rng):
        seen = 0
        for _ in range(300):
            D = rng.choice([3, 4])
            n = rng.randint(2, 5)
            pi = {c: tuple(random_perm(rng, n)) for c in range(D + 1)}
            gamma = StackedMap(D, pi, zero_reversed=True)
            for l in range(n):
                if gamma.pi[0][l] == l:
                    continue
                res = unhook(gamma, l)
                assert res.delta_zero_score == D - 2 * i2(gamma, l)
                assert res.gamma.zero_score() - gamma.zero_score() == res.delta_zero_score
                pred = list(gamma.pi[0]).index(l)
                assert hook(res.gamma, l, pred) == gamma
                seen += 1
        assert seen > 100

    def test_lone_vertex_rejected(self):
        gamma = StackedMap(3, {c: (0, 1) for c in range(4)}, zero_reversed=True)
        with pytest.raises(GraphError):
            unhook(gamma, 0)


class TestBoundary:
    def test_marked_covering(self):
        g = _k33_covering()
        zero = [k for k, e in enumerate(g.edges) if e[2] == 0]
        marked = g.with_edges(g.edges, frozenset(zero[:2]))
        rep = boundary_of_map(psi0(marked))
        assert rep.consistent
        assert canonical_form(rep.graph) == canonical_form(graph_boundary(marked))

    def test_requires_marks(self):
        with pytest.raises(GraphError):
            boundary_of_map(psi0(_k33_covering()))


class TestQuartic:
    def test_two_routes_agree(self):
        checked = 0
        for E in (1, 2, 3):
            for m in connected_maps(E):
                for cols in itertools.product(range(1, 4), repeat=E):
                    edge_of: dict[int, int] = {}
                    for d in range(m.n_darts):
                        e = min(d, m.alpha[d])
                        edge_of.setdefault(e, len(edge_of))
                    colors = [cols[edge_of[min(d, m.alpha[d])]] for d in range(m.n_darts)]
                    g = quartic_gluing(m, colors, 3)
                    rep = quartic_decomposition(quartic_map(g))
                    assert rep.delta == 3 + 2 * E - zero_score(g)
                    checked += 1
        assert checked > 100

    def test_single_bubble_is_tree_order(self):
        g = covering(fx.quartic_melonic(3), [(1, 0), (3, 2)])
        rep = quartic_decomposition(quartic_map(g))
        assert rep.label in ("tree", "single-monochromatic-cycle")


def test_simplified_map_faces():
    g = _k33_covering()
    sm = simplified_map(g)
    assert sum(sm.faces(i) for i in (1, 2, 3)) == zero_score(g)


def test_set_partitions_bell_numbers():
    assert [len(set_partitions(n, n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    assert len(set_partitions(4, 2)) == 8


def test_dot_output():
    g = _k33_covering()
    zero = [k for k, e in enumerate(g.edges) if e[2] == 0]
    text = stacked_to_dot(psi0(g.with_edges(g.edges, frozenset(zero[:1]))))
    assert text.startswith("graph Psi {")
    assert "dashed" in text
    assert text.rstrip().endswith("}")
