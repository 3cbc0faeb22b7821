import random

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gemkit.core import canonical_form, from_permutations, gurau_degree, jacket_degree, parse, serialize, zero_score
from gemkit.enumerate import SeriesSpec, power_series_power, series_solve
from gemkit.stacked import StackedMap, i2, psi_inverse, unhook


@st.composite
def closed_graphs(draw, max_p=4, dims=(3, 4), marks=False):
    D = draw(st.sampled_from(dims))
    p = draw(st.integers(1, max_p))
    perms = {c: draw(st.permutations(range(p))) for c in range(D + 1)}
    marked = draw(st.sets(st.integers(0, p - 1))) if marks else ()
    return from_permutations(D, perms, marked)


def relabel(g, seed: int):
    order = list(range(g.n_vertices))
    random.Random(seed).shuffle(order)
    new = {old: k for k, old in enumerate(order)}
    black = [False] * g.n_vertices
    for old, k in new.items():
        black[k] = g.black[old]
    edges = [(new[b], new[w], c) for b, w, c in g.edges]
    perm = list(range(len(edges)))
    random.Random(seed + 1).shuffle(perm)
    marked = frozenset(perm.index(k) for k in g.marked)
    return g.__class__(g.D, tuple(black), tuple(edges[k] for k in perm), marked)


@given(closed_graphs(marks=True))
def test_serialize_round_trip(g):
    assert parse(serialize(g)) == g


@given(closed_graphs(marks=True), st.integers(0, 10**6))
def test_canonical_form_ignores_labels(g, seed):
    assert canonical_form(relabel(g, seed)) == canonical_form(g)


@settings(max_examples=60, deadline=None)
@given(closed_graphs(max_p=3))
def test_gurau_equals_jacket_degree(g):
    assume(g.is_connected())
    assert gurau_degree(g) == jacket_degree(g)


@settings(max_examples=200)
@given(st.sampled_from([3, 4]), st.integers(2, 5), st.data())
def test_unhook_law(D, n, data):
    pi = {c: tuple(data.draw(st.permutations(range(n)))) for c in range(D + 1)}
    gamma = StackedMap(D, pi, zero_reversed=True)
    movable = [l for l in range(n) if gamma.pi[0][l] != l]
    if not movable:
        return
    l = data.draw(st.sampled_from(movable))
    res = unhook(gamma, l)
    assert res.delta_zero_score == D - 2 * i2(gamma, l)
    before = zero_score(psi_inverse(gamma)[0])
    after = zero_score(psi_inverse(res.gamma)[0])
    assert after - before == res.delta_zero_score


def naive_power(g, a, n):
    out = [1] + [0] * n
    for _ in range(a):
        out = [sum(out[i] * g[k - i] for i in range(k + 1)) for k in range(n + 1)]
    return out


@given(st.lists(st.tuples(st.integers(1, 5), st.integers(1, 3), st.integers(0, 4)), min_size=1, max_size=3))
def test_series_satisfies_equation(terms):
    spec = SeriesSpec(tuple(terms))
    n = 6
    c = series_solve(spec, n)
    rhs = [1] + [0] * n
    for k, m, p in terms:
        powered = naive_power(c, p, n)
        for j in range(m, n + 1):
            rhs[j] += k * powered[j - m]
    assert c == rhs


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 5))
def test_miller_recurrence_matches_products(tail, a):
    g = [1] + tail
    n = len(g) - 1
    assert power_series_power(g, a, n) == naive_power(g, a, n)
