"""Orders of unicellular coverings in the complex colored SYK model.

A covering is a closed bipartite graph whose color-0 edges give the pairing.
Marked colored edges are passed as edge indices next to the graph.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .core import ColoredGraph, GraphError, from_permutations
from .enumerate import SeriesSpec, series_solve
from .maps import UnionFind, count_cycles, permutation_cycles
from .pairings import CapExceeded, covering, lm
from .stacked import psi_color

MAX_COUNT_VERTICES = 12


def _require_bipartite_covering(g: ColoredGraph) -> None:
    if not g.is_closed():
        raise GraphError("expected a closed graph (colors 0..D at every vertex)")
    for b, w, _ in g.edges:
        if not g.black[b] or g.black[w]:
            raise GraphError("only bipartite (complex) coverings are supported")


def classify_order(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> int:
    """Order delta_0 of the covering of ``b`` by ``pairing``."""
    if not b.is_connected():
        raise GraphError("bubble must be connected")
    g = covering(b, pairing)
    order = psi_color(g, 0).circuit_rank()
    assert order == lm(b, pairing)
    return order


def order_of_covering(g: ColoredGraph) -> int:
    _require_bipartite_covering(g)
    if not g.is_connected():
        raise GraphError("covering must be connected")
    return psi_color(g, 0).circuit_rank()


# ---- stacked map skeleton, pruning and schemes --------------------------------


@dataclass(frozen=True)
class SykMap:
    """Underlying multigraph of a stacked map with the pairing of color 0.

    Nodes are white squares (color -1) or colored vertices; ``marks`` counts
    the marked corners of each node; ``length`` is the number of internal
    vertices of each edge (0 for plain edges, positive for chain-edges).
    """

    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    marks: tuple[int, ...]
    length: tuple[int, ...]

    @property
    def n_nodes(self) -> int:
        return len(self.colors)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_nodes
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def components(self) -> int:
        uf = UnionFind(self.n_nodes)
        for a, b in self.edges:
            uf.union(a, b)
        return uf.components

    def circuit_rank(self) -> int:
        return len(self.edges) - self.n_nodes + self.components()

    def n_marks(self) -> int:
        return sum(self.marks)

    def chain_kind(self, e: int) -> str:
        """Label like ``bb-ij`` from the endpoint kinds and colors."""
        ends = sorted(self.edges[e], key=lambda v: self.colors[v])
        kinds = "".join("w" if self.colors[v] < 0 else "b" for v in ends)
        same = "ii" if self.colors[ends[0]] == self.colors[ends[1]] else "ij"
        return f"{kinds}-{same}"


def skeleton(g: ColoredGraph, marked_edges: Sequence[int] = ()) -> SykMap:
    """Skeleton of the stacked map of a covering with marked colored edges."""
    _require_bipartite_covering(g)
    zero = [e for e in g.edges if e[2] == 0]
    pair_of_black = {b: l for l, (b, _, _) in enumerate(zero)}
    pair_of_white = {w: l for l, (_, w, _) in enumerate(zero)}
    p = len(zero)
    colors: list[int] = [-1] * p
    edges: list[tuple[int, int]] = []
    star: dict[tuple[int, int], int] = {}
    for c in range(g.D + 1):
        perm = [pair_of_white[g.neighbor(b, c)] for b, _, _ in zero]
        for cyc in permutation_cycles(perm):
            node = len(colors)
            colors.append(c)
            for l in cyc:
                star[c, l] = node
                edges.append((l, node))
    marks = [0] * len(colors)
    for e in marked_edges:
        b, _, c = g.edges[e]
        if c == 0:
            raise GraphError("marked edges must carry colors 1..D")
        marks[star[c, pair_of_black[b]]] += 1
    return SykMap(tuple(colors), tuple(edges), tuple(marks), (0,) * len(edges))


def _restrict(m: SykMap, keep: Sequence[int], edges: Sequence[tuple[int, int, int]]) -> SykMap:
    new = {v: k for k, v in enumerate(keep)}
    return SykMap(
        tuple(m.colors[v] for v in keep),
        tuple((new[a], new[b]) for a, b, _ in edges),
        tuple(m.marks[v] for v in keep),
        tuple(n for _, _, n in edges),
    )


def prune(m: SykMap) -> SykMap:
    """Remove unmarked leaves until none is left."""
    alive = [True] * m.n_nodes
    live_edges = set(range(len(m.edges)))
    deg = m.degrees()
    incident: dict[int, list[int]] = {v: [] for v in range(m.n_nodes)}
    for k, (a, b) in enumerate(m.edges):
        incident[a].append(k)
        incident[b].append(k)
    stack = [v for v in range(m.n_nodes) if deg[v] == 1 and not m.marks[v]]
    while stack:
        v = stack.pop()
        if not alive[v] or deg[v] != 1 or m.marks[v]:
            continue
        (e,) = [k for k in incident[v] if k in live_edges]
        live_edges.discard(e)
        alive[v] = False
        a, b = m.edges[e]
        u = b if a == v else a
        deg[v] -= 1
        deg[u] -= 1
        if deg[u] == 1 and not m.marks[u]:
            stack.append(u)
    keep = [v for v in range(m.n_nodes) if alive[v]]
    edges = [(m.edges[k][0], m.edges[k][1], m.length[k]) for k in sorted(live_edges)]
    return _restrict(m, keep, edges)


def to_scheme(m: SykMap) -> SykMap:
    """Collapse every maximal run of unmarked degree-2 vertices into one chain-edge."""
    if not m.n_marks():
        raise GraphError("vacuum maps have no unique scheme; mark at least one corner")
    if any(d == 1 and not k for d, k in zip(m.degrees(), m.marks)):
        raise GraphError("prune the map first")
    edges = {k: (a, b, m.length[k]) for k, (a, b) in enumerate(m.edges)}
    alive = set(range(m.n_nodes))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if m.marks[v]:
                continue
            inc = [k for k, (a, b, _) in edges.items() if v in (a, b)]
            if len(inc) != 2 or any(edges[k][0] == edges[k][1] for k in inc):
                continue
            (a1, b1, n1), (a2, b2, n2) = edges.pop(inc[0]), edges.pop(inc[1])
            u = b1 if a1 == v else a1
            w = b2 if a2 == v else a2
            edges[inc[0]] = (u, w, n1 + n2 + 1)
            alive.discard(v)
            changed = True
    keep = sorted(alive)
    return _restrict(m, keep, [edges[k] for k in sorted(edges)])


def scheme_of(g: ColoredGraph, marked_edges: Sequence[int]) -> SykMap:
    return to_scheme(prune(skeleton(g, marked_edges)))


# ---- generating functions ---------------------------------------------------------


Bivariate = dict[tuple[int, int], int]  # (power of z_white, power of z_colored) -> coefficient

CHAIN_KINDS = ("bb-ii", "bb-ij", "ww-ii", "ww-ij", "wb-ii", "wb-ij", "ww-ii*", "wb-ii*")


def _chain_walks(D: int, m: int, same: bool) -> int:
    """Color sequences of length m+1 with distinct neighbours, fixed ends."""
    if same:
        return ((D - 1) ** m + (D - 1) * (-1) ** m) // D
    return ((D - 1) ** m - (-1) ** m) // D


def _series_inverse(a: Sequence[int], n: int) -> list[int]:
    if a[0] != 1:
        raise GraphError("series inverse needs constant term 1")
    out = [0] * (n + 1)
    out[0] = 1
    for k in range(1, n + 1):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
    return out


def _mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _y_series_bb(D: int, same: bool, n: int) -> list[int]:
    """Coefficients in y of the colored-to-colored chain factor, up to y^n."""
    # ii: (D-1) y^2 / ((1+y)(1-(D-1)y));  ij: 1 / ((1+y)(1-(D-1)y))
    den = _mul([1, 1], [1, -(D - 1)], n)
    inv = _series_inverse(den + [0] * n, n)
    if same:
        return [0, 0] + [(D - 1) * c for c in inv[: max(n - 1, 0)]]
    return inv


def chain_gf(kind: str, D: int, n: int) -> Bivariate:
    """Coefficients of the chain-edge generating function up to y^n, y = z_white z_colored."""
    if kind not in CHAIN_KINDS:
        raise GraphError(f"unknown chain kind {kind!r}")
    if D < 2:
        raise GraphError("need D >= 2")
    ii = _y_series_bb(D, True, n)
    ij = _y_series_bb(D, False, n)
    out: Counter[tuple[int, int]] = Counter()
    # bb-ii = ii(y)/z_b ; bb-ij = z_w ij(y)
    bb_ii = {(k, k - 1): c for k, c in enumerate(ii) if c}
    bb_ij = {(k + 1, k): c for k, c in enumerate(ij) if c}
    if kind == "bb-ii":
        out.update(bb_ii)
    elif kind == "bb-ij":
        out.update(bb_ij)
    elif kind == "ww-ij":
        out.update({(a, b + 2): c for (a, b), c in bb_ij.items()})
    elif kind == "ww-ii":
        out[0, 1] += 1
        out.update({(a, b + 2): c for (a, b), c in bb_ii.items()})
    elif kind == "wb-ij":
        out.update({(a, b + 1): c for (a, b), c in bb_ij.items()})
    elif kind == "wb-ii":
        out[0, 0] += 1
        out.update({(a, b + 1): c for (a, b), c in bb_ii.items()})
    elif kind == "ww-ii*":
        out.update({(a, b + 2): c for (a, b), c in bb_ii.items()})
    else:
        out.update({(a, b + 1): c for (a, b), c in bb_ii.items()})
    return {k: v for k, v in sorted(out.items()) if v}


def chain_walk_counts(kind: str, D: int, m: int) -> int:
    """Number of colored-to-colored chains with m white squares, by direct walk count."""
    if kind not in ("bb-ii", "bb-ij"):
        raise GraphError("walk counts cover the colored-to-colored kinds")
    return _chain_walks(D, m, kind == "bb-ii")


def tree_series(D: int, n: int) -> list[int]:
    """Rooted D-ary tree series G_T = 1 + z G_T^D."""
    return series_solve(SeriesSpec(((1, 1, D),)), n)


COMPOSITES = ("G4_LO", "G2_NLO", "G2_NLO_corrected")


def composite_gf(name: str, D: int, n: int) -> list[int]:
    """Coefficients z^0..z^n of the two-rooted LO or one-rooted NLO generating function.

    ``G2_NLO`` is the published closed form; ``G2_NLO_corrected`` restores the
    tree factors of the two trivalent schemes, which sum to
    D^2 (D-1)/2 * G_T y^2 / ((1+y)(1-(D-1)y)^2).  Only the corrected series
    agrees with brute-force counts from z^3 on.
    """
    if name not in COMPOSITES:
        raise GraphError(f"unknown generating function {name!r}")
    g = tree_series(D, n)
    y = [0] + g[1:]  # z G_T^D = G_T - 1
    one_minus = [1] + [-(D - 1) * c for c in y[1:]]
    if name == "G4_LO":
        num = _mul(_mul(g, g, n), y, n)
        res = _mul(num, _series_inverse(one_minus, n), n)
        return [D * (D - 1) * c for c in res]
    y2 = _mul(y, y, n)
    if name == "G2_NLO_corrected":
        den = _mul(_mul([1] + y[1:], one_minus, n), one_minus, n)
        res = _mul(_mul(g, y2, n), _series_inverse(den, n), n)
        return [D * D * (D - 1) * c // 2 for c in res]
    g2m1 = [c - (1 if k == 0 else 0) for k, c in enumerate(_mul(g, g, n))]
    tail = _mul(_mul(y, g, n), g2m1, n)
    inner = [2 * a + 2 * (D - 1) * t for a, t in zip(g, tail)]
    inner[0] += D - 2
    num = _mul(y2, inner, n)
    den = _mul(_mul([1] + y[1:], one_minus, n), one_minus, n)
    res = _mul(num, _series_inverse(den, n), n)
    half = D * (D - 1)
    out = []
    for c in res:
        assert (half * c) % 2 == 0
        out.append(half * c // 2)
    return out


# ---- brute-force counts -------------------------------------------------------------


def _perms_by_cycles(p: int) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {}
    for s in itertools.permutations(range(p)):
        out.setdefault(count_cycles(s), []).append(s)
    return out


def count_by_order(D: int, k: int, n_marks: int, v_max: int, first_color: int | None = None) -> dict[int, Fraction]:
    """Rooted counts of coverings with order k and n_marks ordered marked edges.

    Runs over bubbles on 2p <= 2 v_max vertices whose color-0 edges join black
    l to white l; a rooted covering has exactly p! such labelings.
    Marked colored edges must leave the bubble connected and two marks of one
    color must lie on different (0, i) cycles.  ``first_color`` fixes the color
    of the first mark.  Returns p -> count (a fraction only for n_marks = 0).
    """
    if 2 * v_max > MAX_COUNT_VERTICES:
        raise CapExceeded(f"2 * v_max = {2 * v_max} exceeds {MAX_COUNT_VERTICES}")
    out: dict[int, Fraction] = {}
    for p in range(1, v_max + 1):
        target = 1 + (D - 1) * p - k  # sum over colors of the cycle counts
        buckets = _perms_by_cycles(p)
        total = 0
        for counts in itertools.product(sorted(buckets), repeat=D):
            if sum(counts) != target:
                continue
            for sig in itertools.product(*(buckets[c] for c in counts)):
                total += _count_marks(D, p, sig, n_marks, first_color)
        out[p] = Fraction(total, factorial(p))
    return out


def _count_marks(D: int, p: int, sig: Sequence[Sequence[int]], n_marks: int, first_color: int | None) -> int:
    # vertices: black l -> l, white l -> p + l; color 0 joins black l and white l
    edges = [(l, p + l) for l in range(p)]
    colored = [(c + 1, l, p + sig[c][l]) for c in range(D) for l in range(p)]
    cycle_of = []
    for c in range(D):
        lab = [0] * p
        for t, cyc in enumerate(permutation_cycles(sig[c])):
            for x in cyc:
                lab[x] = t
        cycle_of.append(lab)
    uf = UnionFind(2 * p)
    for a, b in edges:
        uf.union(a, b)
    for _, a, b in colored:
        uf.union(a, b)
    if uf.components != 1:
        return 0
    count = 0
    for marks in itertools.permutations(range(len(colored)), n_marks):
        if first_color is not None and colored[marks[0]][0] != first_color:
            continue
        seen = set()
        ok = True
        for e in marks:
            c, l, _ = colored[e]
            key = (c, cycle_of[c - 1][l])
            if key in seen:
                ok = False
                break
            seen.add(key)
        if not ok:
            continue
        uf = UnionFind(2 * p)
        for a, b in edges:
            uf.union(a, b)
        skip = set(marks)
        for t, (_, a, b) in enumerate(colored):
            if t not in skip:
                uf.union(a, b)
        if uf.components == 1:
            count += 1
    return count


def labeled_covering(D: int, sig: Sequence[Sequence[int]]) -> ColoredGraph:
    """Covering whose color-0 edges join black l to white l."""
    perms = {0: list(range(len(sig[0])))}
    perms.update({c + 1: list(s) for c, s in enumerate(sig)})
    return from_permutations(D, perms)


def amplitude_exponent(g: ColoredGraph, marked_edges: Sequence[int]) -> int:
    """Power of N carried by a covering with n marked edges: 1 - n - L."""
    return 1 - len(marked_edges) - skeleton(g, marked_edges).circuit_rank()
