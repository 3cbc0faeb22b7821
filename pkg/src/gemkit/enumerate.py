"""Exhaustive enumeration of bubble gluings and exact series solving."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Sequence

from .core import ColoredGraph, GraphError, canonical_form, disjoint_union, score, to_permutations, zero_score
from .maps import UnionFind, count_cycles
from .pairings import CapExceeded, covering, optimal_pairings
from .stacked import ProjectedMap, projected, psi0
from .topology_moves import bubble_subgraph, bubbles_of, switch_edges

ROOTINGS = ("labeled", "rooted-edge", "unlabeled")
DEFAULT_BLACK_CAP = 12


@dataclass(frozen=True)
class GluingSpec:
    bubbles: Sequence[ColoredGraph]
    b_max: int
    rooting: str = "labeled"
    connected: bool = True
    cap: int = DEFAULT_BLACK_CAP

    def __post_init__(self) -> None:
        if not self.bubbles:
            raise GraphError("empty bubble set")
        if len({b.D for b in self.bubbles}) != 1:
            raise GraphError("all bubbles must share D")
        if self.b_max < 1:
            raise GraphError("b_max must be at least 1")
        if self.rooting not in ROOTINGS:
            raise GraphError(f"rooting must be one of {ROOTINGS}")
        for b in self.bubbles:
            if not b.is_bubble() or not b.is_connected():
                raise GraphError("gluings need connected bubbles")

    @property
    def D(self) -> int:
        return self.bubbles[0].D

    def placements(self, b: int) -> list[tuple[int, ...]]:
        """Multisets of bubble types with ``b`` elements."""
        return list(itertools.combinations_with_replacement(range(len(self.bubbles)), b))


class _Search:
    """Color-0 matchings of a fixed union of bubbles.

    The number of closed (0, i) cycles is maintained while edges are added:
    for each color, every free black vertex starts an alternating path that
    ends at a free white vertex.
    """

    def __init__(self, union: ColoredGraph, bubble_of: Sequence[int], n_bubbles: int) -> None:
        self.union = union
        blacks, whites, perms = to_permutations(union)
        self.blacks, self.whites = blacks, whites
        self.n = len(blacks)
        self.D = union.D
        self.perms = [perms[c] for c in sorted(perms)]
        self.bub_black = [bubble_of[b] for b in blacks]
        self.bub_white = [bubble_of[w] for w in whites]
        self.n_bubbles = n_bubbles

    def run(
        self,
        visit: Callable[[list[int], int], None],
        threshold: Callable[[], int] | None = None,
        connected: bool = True,
    ) -> None:
        n, D = self.n, self.D
        end = [list(p) for p in self.perms]
        start = []
        for p in self.perms:
            inv = [0] * n
            for k, w in enumerate(p):
                inv[w] = k
            start.append(inv)
        match = [-1] * n
        used = [False] * n
        closed = 0

        def connected_ok() -> bool:
            if self.n_bubbles == 1:
                return True
            uf = UnionFind(self.n_bubbles)
            for k in range(n):
                uf.union(self.bub_black[k], self.bub_white[match[k]])
            return uf.components == 1

        def rec(x: int) -> None:
            nonlocal closed
            if x == n:
                if not connected or connected_ok():
                    visit(match, closed)
                return
            if threshold is not None and closed + D * (n - x) < threshold():
                return
            for y in range(n):
                if used[y]:
                    continue
                saved = []
                gain = 0
                for i in range(D):
                    e = end[i][x]
                    if e == y:
                        gain += 1
                    else:
                        s = start[i][y]
                        saved.append((i, s, end[i][s], e, start[i][e]))
                        end[i][s] = e
                        start[i][e] = s
                used[y] = True
                match[x] = y
                closed += gain
                rec(x + 1)
                closed -= gain
                used[y] = False
                match[x] = -1
                for i, s, old_end, e, old_start in reversed(saved):
                    end[i][s] = old_end
                    start[i][e] = old_start

        rec(0)

    def graph(self, match: Sequence[int]) -> ColoredGraph:
        edges = list(self.union.edges)
        edges += [(self.blacks[k], self.whites[w], 0) for k, w in enumerate(match)]
        return self.union.with_edges(edges)


def _union(spec: GluingSpec, placement: Sequence[int]) -> tuple[ColoredGraph, list[int]]:
    parts = [spec.bubbles[t] for t in placement]
    bubble_of = [k for k, part in enumerate(parts) for _ in range(part.n_vertices)]
    return disjoint_union(parts), bubble_of


def _check_cap(spec: GluingSpec, placement: Sequence[int]) -> None:
    blacks = sum(spec.bubbles[t].n_vertices // 2 for t in placement)
    if blacks > spec.cap:
        raise CapExceeded(f"{blacks} black vertices exceed the cap of {spec.cap}")


def _labeled(spec: GluingSpec, size: int) -> Iterator[ColoredGraph]:
    for placement in spec.placements(size):
        _check_cap(spec, placement)
        union, bubble_of = _union(spec, placement)
        search = _Search(union, bubble_of, size)
        found: list[ColoredGraph] = []
        search.run(lambda m, _: found.append(search.graph(m)), connected=spec.connected)
        yield from found


def enumerate_gluings(spec: GluingSpec, b: int | None = None) -> Iterator[ColoredGraph]:
    """Every gluing with ``b`` bubbles (all ``b <= b_max`` if ``b`` is None).

    ``labeled`` yields every color-0 matching of each placement of bubble types,
    ``unlabeled`` one graph per isomorphism class, and ``rooted-edge`` one graph
    per class of (graph, marked color-0 edge).
    """
    sizes = range(1, spec.b_max + 1) if b is None else [b]
    for size in sizes:
        seen: set[str] = set()
        for g in _labeled(spec, size):
            if spec.rooting == "labeled":
                yield g
                continue
            if spec.rooting == "unlabeled":
                variants = [g]
            else:
                variants = [g.with_edges(g.edges, [k]) for k, e in enumerate(g.edges) if e[2] == 0]
            for h in variants:
                key = canonical_form(h)
                if key not in seen:
                    seen.add(key)
                    yield h


def count_gluings(spec: GluingSpec, b: int) -> int:
    """Number of gluings with ``b`` bubbles under ``spec.rooting``."""
    if spec.rooting != "labeled":
        return sum(1 for _ in enumerate_gluings(spec, b))
    total = 0
    for placement in spec.placements(b):
        _check_cap(spec, placement)
        union, bubble_of = _union(spec, placement)
        counter = [0]

        def visit(_m: list[int], _c: int) -> None:
            counter[0] += 1

        _Search(union, bubble_of, b).run(visit, connected=spec.connected)
        total += counter[0]
    return total


@dataclass(frozen=True)
class MaximalLevel:
    b: int
    phi0_max: int
    witnesses: list[ColoredGraph]


def maximal_level(spec: GluingSpec, b: int) -> MaximalLevel:
    """Maximum 0-score at ``b`` bubbles and its witnesses up to isomorphism."""
    best = [-1]
    hits: list[ColoredGraph] = []
    for placement in spec.placements(b):
        _check_cap(spec, placement)
        union, bubble_of = _union(spec, placement)
        search = _Search(union, bubble_of, b)

        def visit(m: list[int], closed: int) -> None:
            if closed > best[0]:
                best[0] = closed
                hits.clear()
            if closed == best[0]:
                hits.append(search.graph(m))

        search.run(visit, threshold=lambda: best[0], connected=spec.connected)
    uniq: dict[str, ColoredGraph] = {}
    for g in hits:
        uniq.setdefault(canonical_form(g), g)
    return MaximalLevel(b, best[0], [uniq[k] for k in sorted(uniq)])


def maximal_set(spec: GluingSpec) -> dict[int, MaximalLevel]:
    return {b: maximal_level(spec, b) for b in range(1, spec.b_max + 1)}


# ---- bubble-dependent degree from enumeration -------------------------------


@dataclass(frozen=True)
class TildeAEstimate:
    estimate: Fraction
    attained_at: list[int]
    witnesses: list[ColoredGraph]
    trace: list[tuple[int, int, Fraction]]
    upper_cap: Fraction
    tree_attained: bool


def is_tree_gluing(g: ColoredGraph) -> bool:
    """True if some choice of optimal pairings makes the projected map a tree."""
    comps = bubbles_of(g)
    options = []
    for comp in comps:
        _, opts = optimal_pairings(bubble_subgraph(g, comp))
        options.append([[(comp[x], comp[y]) for x, y in om] for om in opts])
    for choice in itertools.product(*options):
        pairing = [pair for part in choice for pair in part]
        if projected(psi0(g, pairing)).is_tree():
            return True
    return False


def empirical_tilde_a(spec: GluingSpec) -> TildeAEstimate:
    """Supremum of (Phi_0 - D)/b over the enumerated maximal gluings."""
    D = spec.D
    trace = []
    levels = maximal_set(spec)
    for b, lvl in levels.items():
        trace.append((b, lvl.phi0_max, Fraction(lvl.phi0_max - D, b)))
    est = max(r for _, _, r in trace)
    at = [b for b, _, r in trace if r == est]
    witnesses = [g for b in at for g in levels[b].witnesses]
    # melonic bound on the gluing: Phi_0 - D <= b * max(D(D-1)V/4 - Phi(B))
    cap = max(Fraction(D * (D - 1) * b.n_vertices, 4) - score(b) for b in spec.bubbles)
    tree = any(is_tree_gluing(g) for g in witnesses)
    return TildeAEstimate(est, at, witnesses, trace, cap, tree)


@dataclass(frozen=True)
class LinearBoundCertificate:
    tilde_a: Fraction
    passed: bool
    checked: int
    saturating: list[ColoredGraph]
    counterexample: ColoredGraph | None


def verify_linear_bound(spec: GluingSpec, tilde_a: Fraction) -> LinearBoundCertificate:
    """Check Phi_0 <= D + tilde_a * b on every enumerated gluing."""
    tilde_a = Fraction(tilde_a)
    D = spec.D
    saturating: list[ColoredGraph] = []
    checked = 0
    for b in range(1, spec.b_max + 1):
        bound = D + tilde_a * b
        for placement in spec.placements(b):
            _check_cap(spec, placement)
            union, bubble_of = _union(spec, placement)
            search = _Search(union, bubble_of, b)
            out: dict[str, object] = {}
            count = [0]

            def visit(m: list[int], closed: int) -> None:
                count[0] += 1
                if closed > bound and "bad" not in out:
                    out["bad"] = search.graph(m)
                elif closed == bound:
                    saturating.append(search.graph(m))

            search.run(visit, connected=spec.connected)
            checked += count[0]
            if "bad" in out:
                bad = out["bad"]
                assert isinstance(bad, ColoredGraph)
                return LinearBoundCertificate(tilde_a, False, checked, saturating, bad)
    return LinearBoundCertificate(tilde_a, True, checked, saturating, None)


# ---- rooted melonic counts ----------------------------------------------------


def rooted_melonic_count(D: int, k: int) -> int:
    """Melonic graphs in dimension D with 2k vertices, rooted at a color-0 edge.

    Runs over every labeled graph whose color-0 edge at black 0 ends at white 0
    and divides by the ((k-1)!)^2 relabelings fixing that edge.
    """
    perms = list(itertools.permutations(range(k)))
    rooted0 = [p for p in perms if p[0] == 0]
    target = D + D * (D - 1) * k // 2  # score of a melonic graph on 2k vertices
    inv = {p: tuple(sorted(range(k), key=lambda x: p[x])) for p in perms}
    total = 0
    for s0 in rooted0:
        for rest in itertools.product(perms, repeat=D):
            sig = (s0,) + rest
            uf = UnionFind(2 * k)
            for s in sig:
                for x in range(k):
                    uf.union(x, k + s[x])
            if uf.components != 1:
                continue
            phi = 0
            for i, j in itertools.combinations(range(D + 1), 2):
                si_inv = inv[sig[i]]
                phi += count_cycles([si_inv[sig[j][x]] for x in range(k)])
            if phi == target:
                total += 1
    rel = factorial(k - 1) ** 2
    assert total % rel == 0
    return total // rel


# ---- tree-like decomposition ----------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    ok: bool
    pieces: list[ColoredGraph]
    additive: bool


def separating_switch(g: ColoredGraph) -> tuple[ColoredGraph, ColoredGraph] | None:
    """A color-0 switch splitting ``g`` into two gluings, if one exists."""
    zero = [k for k, e in enumerate(g.edges) if e[2] == 0]
    for f, f2 in itertools.combinations(zero, 2):
        h = switch_edges(g, f, f2)
        comps = h.components()
        if len(comps) == 2:
            parts = []
            for comp in comps:
                pos = {v: k for k, v in enumerate(comp)}
                edges = tuple((pos[b], pos[w], c) for b, w, c in h.edges if b in pos)
                parts.append(ColoredGraph(g.D, tuple(h.black[v] for v in comp), edges))
            return parts[0], parts[1]
    return None


def decompose(g: ColoredGraph, patterns: set[str]) -> Decomposition:
    """Split ``g`` by separating color-0 switches until every piece is a pattern."""
    if canonical_form(g) in patterns:
        return Decomposition(True, [g], True)
    split = separating_switch(g)
    if split is None:
        return Decomposition(False, [g], True)
    left, right = split
    dl, dr = decompose(left, patterns), decompose(right, patterns)
    additive = zero_score(g) - g.D == (zero_score(left) - g.D) + (zero_score(right) - g.D)
    return Decomposition(dl.ok and dr.ok, dl.pieces + dr.pieces, additive and dl.additive and dr.additive)


@dataclass(frozen=True)
class TreeLikeReport:
    ok: bool
    checked: int
    failures: list[ColoredGraph] = field(default_factory=list)


def tree_like_check(spec: GluingSpec, patterns: Sequence[ColoredGraph]) -> TreeLikeReport:
    """Whether every maximal gluing up to ``b_max`` decomposes into the patterns."""
    keys = {canonical_form(p) for p in patterns}
    failures = []
    checked = 0
    for lvl in maximal_set(spec).values():
        for g in lvl.witnesses:
            checked += 1
            d = decompose(g, keys)
            if not (d.ok and d.additive):
                failures.append(g)
    return TreeLikeReport(not failures, checked, failures)


def optimal_coverings(b: ColoredGraph) -> list[ColoredGraph]:
    _, opts = optimal_pairings(b)
    return [covering(b, om) for om in opts]


# ---- algebraic series ----------------------------------------------------------


@dataclass(frozen=True)
class SeriesSpec:
    """G = 1 + sum k z^m G^p, one (k, m, p) triple per term."""

    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise GraphError("empty series equation")
        for k, m, p in self.terms:
            if m < 1 or p < 0:
                raise GraphError("every term needs a positive power of z")

    @classmethod
    def parse(cls, text: str) -> SeriesSpec:
        s = text.replace(" ", "").replace("*", "")
        if "=" in s:
            s = s.split("=", 1)[1]
        if not s.startswith("1+"):
            raise GraphError("equation must read 1 + terms")
        terms = []
        for part in s[2:].split("+"):
            m = re.fullmatch(r"(\d*)z(?:\^(\d+))?(?:G(?:\^(\d+))?)?", part)
            if not m:
                raise GraphError(f"cannot parse term {part!r}")
            k = int(m.group(1)) if m.group(1) else 1
            zp = int(m.group(2)) if m.group(2) else 1
            if "G" in part:
                gp = int(m.group(3)) if m.group(3) else 1
            else:
                gp = 0
            terms.append((k, zp, gp))
        return cls(tuple(terms))


def power_series_power(g: Sequence[int], a: int, n: int) -> list[int]:
    """Coefficients of g^a up to z^n for g with constant term 1."""
    if g[0] != 1:
        raise GraphError("constant term must be 1")
    out = [0] * (n + 1)
    out[0] = 1
    for m in range(1, n + 1):
        acc = 0
        for k in range(1, min(m, len(g) - 1) + 1):
            acc += (a * k - m + k) * g[k] * out[m - k]
        assert acc % m == 0
        out[m] = acc // m
    return out


def series_solve(spec: SeriesSpec, n: int) -> list[int]:
    """Exact coefficients c_0..c_n of the power-series solution with c_0 = 1."""
    coeffs = [1]
    for order in range(1, n + 1):
        val = 0
        for k, m, p in spec.terms:
            if order - m < 0:
                continue
            # z^m G^p contributes [z^(order-m)] G^p; only c_0..c_(order-1) enter
            powers = power_series_power(coeffs, p, order - m)
            val += k * powers[order - m]
        coeffs.append(val)
    return coeffs


def series_residual(spec: SeriesSpec, coeffs: Sequence[int]) -> list[int]:
    """Coefficients of G - 1 - sum k z^m G^p truncated to the known order."""
    n = len(coeffs) - 1
    rhs = [0] * (n + 1)
    rhs[0] = 1
    for k, m, p in spec.terms:
        powers = power_series_power(coeffs, p, n)
        for t in range(n + 1 - m):
            rhs[t + m] += k * powers[t]
    return [a - b for a, b in zip(coeffs, rhs)]


def singular_point(spec: SeriesSpec) -> tuple[Fraction, Fraction]:
    """Exact (z_c, G_c) for a one-term equation G = 1 + k z^m G^p with m = 1."""
    if len(spec.terms) != 1 or spec.terms[0][1] != 1 or spec.terms[0][2] < 2:
        raise GraphError("exact singular point only for G = 1 + k z G^p with p >= 2")
    k, _, p = spec.terms[0]
    g_c = Fraction(p, p - 1)
    z_c = Fraction((p - 1) ** (p - 1), k * p**p)
    return z_c, g_c


def check_singular_point(spec: SeriesSpec, z: Fraction, g: Fraction) -> bool:
    """Both F(z, G) = 0 and dF/dG = 0 for F = 1 - G + sum k z^m G^p."""
    f = 1 - g + sum(k * z**m * g**p for k, m, p in spec.terms)
    df = -1 + sum(k * p * z**m * g ** (p - 1) for k, m, p in spec.terms if p > 0)
    return f == 0 and df == 0


# ---- bridge / 2-bond structure ---------------------------------------------------


def _disconnects(n: int, edges: Sequence[tuple[int, int]], drop: set[int]) -> bool:
    uf = UnionFind(n)
    for k, (a, b) in enumerate(edges):
        if k not in drop:
            uf.union(a, b)
    return uf.components > 1


def bridge_or_two_bond(pm: ProjectedMap) -> bool:
    """Every edge is a bridge or lies in a cut of exactly two edges."""
    n = pm.n_bubbles + pm.n_stars
    edges = [(b, pm.n_bubbles + s) for b, s in pm.edges]
    for e in range(len(edges)):
        if _disconnects(n, edges, {e}):
            continue
        if not any(
            _disconnects(n, edges, {e, f}) for f in range(len(edges)) if f != e and not _disconnects(n, edges, {f})
        ):
            return False
    return True


def bridge_two_bond_check(g: ColoredGraph) -> bool:
    """Some choice of optimal pairings per bubble gives a bridge/2-bond projected map."""
    comps = bubbles_of(g)
    options = []
    for comp in comps:
        _, opts = optimal_pairings(bubble_subgraph(g, comp))
        options.append([[(comp[x], comp[y]) for x, y in om] for om in opts])
    for choice in itertools.product(*options):
        pairing = [pair for part in choice for pair in part]
        if bridge_or_two_bond(projected(psi0(g, pairing))):
            return True
    return False
