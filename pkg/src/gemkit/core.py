"""Edge-colored bipartite graphs: data model, scores, degree, jackets, boundary.

A :class:`ColoredGraph` stores its vertices with an explicit black/white tag
and its edges as ``(black, white, color)`` triples with stable indices.
Closed graphs carry colors ``0..D`` at every vertex, bubbles carry ``1..D``,
and boundary-case graphs miss color 0 at ``q`` black and ``q`` white vertices.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .maps import Map, UnionFind

__all__ = [
    "ColoredGraph",
    "GemFormatError",
    "GraphError",
    "DegreeReport",
    "SimplexCensus",
    "parse",
    "serialize",
    "validate",
    "bicolored_cycles",
    "score",
    "zero_score",
    "degree_report",
    "weighted_score",
    "gurau_degree",
    "jackets",
    "boundary_graph",
    "is_melonic",
    "simplex_census",
    "euler_check_3d",
    "canonical_form",
    "elementary_melon",
    "from_permutations",
    "disjoint_union",
    "delete_color",
    "to_dot",
]


class GraphError(ValueError):
    """Raised when a graph violates a structural invariant."""


class GemFormatError(GraphError):
    """Raised on malformed ``.gem`` input."""


@dataclass(frozen=True)
class ColoredGraph:
    D: int
    black: tuple[bool, ...]
    edges: tuple[tuple[int, int, int], ...]
    marked: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.D < 1:
            raise GraphError("dimension must be positive")
        n = len(self.black)
        seen: set[tuple[int, int]] = set()
        for idx, (b, w, c) in enumerate(self.edges):
            if not (0 <= b < n and 0 <= w < n):
                raise GraphError(f"edge {idx}: unknown vertex index")
            if not self.black[b] or self.black[w]:
                raise GraphError(f"edge {idx}: must join a black vertex to a white vertex")
            if not 0 <= c <= self.D:
                raise GraphError(f"edge {idx}: color {c} out of range 0..{self.D}")
            for v in (b, w):
                if (v, c) in seen:
                    raise GraphError(f"duplicate color {c} at vertex {v}")
                seen.add((v, c))
        for m in self.marked:
            if not 0 <= m < len(self.edges) or self.edges[m][2] != 0:
                raise GraphError(f"marked edge {m} is not a color-0 edge")

    # ---- basic accessors -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.black)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        """``adjacency[v][c]`` is the index of the color-``c`` edge at ``v``."""
        adj: list[dict[int, int]] = [dict() for _ in self.black]
        for idx, (b, w, c) in enumerate(self.edges):
            adj[b][c] = idx
            adj[w][c] = idx
        return tuple(adj)

    def neighbor(self, v: int, c: int) -> int | None:
        idx = self.adjacency[v].get(c)
        if idx is None:
            return None
        b, w, _ = self.edges[idx]
        return w if v == b else b

    @cached_property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted({c for _, _, c in self.edges}))

    def blacks(self) -> list[int]:
        return [v for v, isb in enumerate(self.black) if isb]

    def whites(self) -> list[int]:
        return [v for v, isb in enumerate(self.black) if not isb]

    def is_closed(self) -> bool:
        full = set(range(self.D + 1))
        return all(set(a) == full for a in self.adjacency)

    def is_bubble(self) -> bool:
        full = set(range(1, self.D + 1))
        return all(set(a) == full for a in self.adjacency)

    def boundary_vertices(self) -> list[int]:
        """Vertices carrying colors ``1..D`` but no color 0."""
        inner = set(range(1, self.D + 1))
        return [v for v, a in enumerate(self.adjacency) if 0 not in a and inner <= set(a)]

    def components(self) -> list[list[int]]:
        uf = UnionFind(self.n_vertices)
        for b, w, _ in self.edges:
            uf.union(b, w)
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(uf.find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def with_edges(self, edges: Iterable[tuple[int, int, int]], marked: Iterable[int] = ()) -> ColoredGraph:
        return ColoredGraph(self.D, self.black, tuple(edges), frozenset(marked))

    def relabel(self, order: Sequence[int]) -> ColoredGraph:
        """Graph whose vertex ``k`` is the old vertex ``order[k]``."""
        new_of = {old: new for new, old in enumerate(order)}
        black = tuple(self.black[old] for old in order)
        edges = tuple((new_of[b], new_of[w], c) for b, w, c in self.edges)
        return ColoredGraph(self.D, black, edges, self.marked)

    def edge_multiset(self) -> list[tuple[int, int, int]]:
        return sorted(self.edges)


# ---- constructors ---------------------------------------------------------


def from_permutations(D: int, perms: dict[int, Sequence[int]], marked_colors0: Iterable[int] = ()) -> ColoredGraph:
    """Graph with ``p`` black and ``p`` white vertices from color permutations.

    White ``k`` is vertex ``2k`` and black ``k`` is vertex ``2k+1``;
    ``perms[c][k]`` is the white index joined to black ``k`` by color ``c``.
    ``marked_colors0`` lists black indices whose color-0 edge is marked.
    """
    sizes = {len(p) for p in perms.values()}
    if len(sizes) != 1:
        raise GraphError("all permutations must have the same size")
    p = sizes.pop()
    black = tuple(v % 2 == 1 for v in range(2 * p))
    edges = []
    marked = []
    marked_set = set(marked_colors0)
    for c in sorted(perms):
        perm = perms[c]
        if sorted(perm) != list(range(p)):
            raise GraphError(f"color {c}: not a permutation")
        for k in range(p):
            if c == 0 and k in marked_set:
                marked.append(len(edges))
            edges.append((2 * k + 1, 2 * perm[k], c))
    return ColoredGraph(D, black, tuple(edges), frozenset(marked))


def to_permutations(g: ColoredGraph) -> tuple[list[int], list[int], dict[int, list[int]]]:
    """Inverse of :func:`from_permutations` for any graph with complete colors.

    Returns (black vertices, white vertices, per-color permutation on indices).
    """
    blacks, whites = g.blacks(), g.whites()
    widx = {w: k for k, w in enumerate(whites)}
    perms = {}
    for c in g.colors:
        perm = []
        for b in blacks:
            e = g.adjacency[b].get(c)
            if e is None:
                raise GraphError(f"color {c} missing at vertex {b}")
            perm.append(widx[g.edges[e][1]])
        perms[c] = perm
    return blacks, whites, perms


def elementary_melon(D: int, with_color0: bool = True) -> ColoredGraph:
    lo = 0 if with_color0 else 1
    return from_permutations(D, {c: [0] for c in range(lo, D + 1)})


def disjoint_union(graphs: Sequence[ColoredGraph]) -> ColoredGraph:
    if not graphs:
        raise GraphError("empty union")
    D = graphs[0].D
    black: list[bool] = []
    edges: list[tuple[int, int, int]] = []
    marked: list[int] = []
    for g in graphs:
        if g.D != D:
            raise GraphError("dimension mismatch")
        off, eoff = len(black), len(edges)
        black.extend(g.black)
        edges.extend((b + off, w + off, c) for b, w, c in g.edges)
        marked.extend(m + eoff for m in g.marked)
    return ColoredGraph(D, tuple(black), tuple(edges), frozenset(marked))


def delete_color(g: ColoredGraph, color: int) -> ColoredGraph:
    keep = [e for e in g.edges if e[2] != color]
    return ColoredGraph(g.D, g.black, tuple(keep))


# ---- .gem format ----------------------------------------------------------


def parse(text: str) -> ColoredGraph:
    """Parse the ``.gem`` text format."""
    header = None
    vertex_tags: dict[int, bool] = {}
    edges: list[tuple[int, int, int]] = []
    roots: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if header is None:
                if parts[0] != "gem" or len(parts) != 3:
                    raise GemFormatError(f"line {lineno}: expected 'gem D=<d> V=<v>'")
                kv = dict(p.split("=", 1) for p in parts[1:])
                header = (int(kv["D"]), int(kv["V"]))
                continue
            kind = parts[0]
            if kind == "v" and len(parts) == 3:
                if parts[2] not in ("black", "white"):
                    raise GemFormatError(f"line {lineno}: vertex color must be black or white")
                vertex_tags[int(parts[1])] = parts[2] == "black"
            elif kind == "e" and len(parts) == 4:
                edges.append((int(parts[1]), int(parts[2]), int(parts[3])))
            elif kind == "root" and len(parts) == 2:
                roots.append(int(parts[1]))
            else:
                raise GemFormatError(f"line {lineno}: malformed line {raw.strip()!r}")
        except (KeyError, ValueError) as exc:
            if isinstance(exc, GemFormatError):
                raise
            raise GemFormatError(f"line {lineno}: malformed line {raw.strip()!r}") from exc
    if header is None:
        raise GemFormatError("missing header")
    D, V = header
    for v in vertex_tags:
        if not 0 <= v < V:
            raise GemFormatError(f"unknown vertex index {v}")
    black = tuple(vertex_tags.get(v, v % 2 == 1) for v in range(V))
    oriented = []
    for u, w, c in edges:
        if not (0 <= u < V and 0 <= w < V):
            raise GemFormatError(f"unknown vertex index in edge ({u}, {w}, {c})")
        if black[u] == black[w]:
            raise GemFormatError(f"non-bipartite edge ({u}, {w}, {c})")
        oriented.append((u, w, c) if black[u] else (w, u, c))
    try:
        return ColoredGraph(D, black, tuple(oriented), frozenset(roots))
    except GraphError as exc:
        raise GemFormatError(str(exc)) from exc


def serialize(g: ColoredGraph) -> str:
    lines = [f"gem D={g.D} V={g.n_vertices}"]
    lines += [f"v {v} {'black' if isb else 'white'}" for v, isb in enumerate(g.black)]
    lines += [f"e {b} {w} {c}" for b, w, c in g.edges]
    lines += [f"root {m}" for m in sorted(g.marked)]
    return "\n".join(lines) + "\n"


def validate(g: ColoredGraph) -> dict[str, object]:
    """Report bipartiteness, regularity class and connectivity."""
    n_black = sum(g.black)
    balanced = 2 * n_black == g.n_vertices
    if g.is_closed():
        kind = "closed"
    elif g.is_bubble():
        kind = "bubble"
    else:
        bnd = g.boundary_vertices()
        inner = set(range(g.D + 1))
        rest_ok = all(set(a) == inner for v, a in enumerate(g.adjacency) if v not in set(bnd))
        nb = sum(1 for v in bnd if g.black[v])
        kind = f"boundary-{nb}" if rest_ok and nb == len(bnd) - nb and nb > 0 else "irregular"
    return {
        "bipartite": True,
        "balanced": balanced,
        "class": kind,
        "connected": g.is_connected(),
        "V": g.n_vertices,
        "E": g.n_edges,
        "D": g.D,
    }


# ---- bicolored cycles and scores -------------------------------------------


def bicolored_cycles(g: ColoredGraph, i: int, j: int) -> list[list[int]]:
    """Closed (i, j)-alternating cycles as vertex lists; open paths are skipped."""
    if i == j:
        raise GraphError("colors must differ")
    for c in (i, j):
        if not 0 <= c <= g.D:
            raise GraphError(f"color {c} out of range")
    adj = g.adjacency
    seen = [False] * g.n_vertices
    cycles = []
    for start in range(g.n_vertices):
        if seen[start] or (i not in adj[start] and j not in adj[start]):
            continue
        # walk the (i, j) component; it is closed iff every vertex has both colors
        comp = [start]
        seen[start] = True
        closed = True
        stack = [start]
        while stack:
            v = stack.pop()
            for c in (i, j):
                u = g.neighbor(v, c)
                if u is None:
                    closed = False
                elif not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        if not closed:
            continue
        cycle = [start]
        v, col = start, i
        while True:
            v = g.neighbor(v, col)
            col = j if col == i else i
            if v == start:
                break
            cycle.append(v)
        cycles.append(cycle)
    return cycles


def _cycle_counts(g: ColoredGraph, pairs: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    return {(i, j): len(bicolored_cycles(g, i, j)) for i, j in pairs}


def score(g: ColoredGraph) -> int:
    """Total number of closed bicolored cycles."""
    cols = range(g.D + 1)
    return sum(_cycle_counts(g, itertools.combinations(cols, 2)).values())


def zero_score(g: ColoredGraph) -> int:
    """Number of closed bicolored cycles containing color 0, ignoring marked edges."""
    if g.marked:
        g = g.with_edges([e for k, e in enumerate(g.edges) if k not in g.marked])
    return sum(len(bicolored_cycles(g, 0, i)) for i in range(1, g.D + 1))


@dataclass(frozen=True)
class DegreeReport:
    score: int
    zero_score: int
    pair_counts: dict[tuple[int, int], int]
    gurau_degree: Fraction
    jacket_genera: list[tuple[tuple[int, ...], int]]


def degree_report(g: ColoredGraph) -> DegreeReport:
    counts = _cycle_counts(g, itertools.combinations(range(g.D + 1), 2))
    jk = [(mu, m.genus()) for mu, m, _ in jackets(g)]
    return DegreeReport(
        score=sum(counts.values()),
        zero_score=sum(v for (i, _), v in counts.items() if i == 0),
        pair_counts=counts,
        gurau_degree=gurau_degree(g),
        jacket_genera=jk,
    )


def weighted_score(g: ColoredGraph, excluded_pairs: Iterable[Iterable[int]]) -> int:
    """Score without the bicolored cycles of the excluded color pairs."""
    excluded = set()
    for pair in excluded_pairs:
        i, j = sorted(pair)
        if i == j or not (0 <= i and j <= g.D):
            raise GraphError(f"invalid color pair {pair}")
        excluded.add((i, j))
    lo = 0 if 0 in g.colors else 1
    pairs = [p for p in itertools.combinations(range(lo, g.D + 1), 2) if p not in excluded]
    return sum(_cycle_counts(g, pairs).values())


def gurau_degree(g: ColoredGraph) -> Fraction:
    """D + D(D-1)/4 V - Phi for a closed connected graph."""
    if not g.is_connected():
        raise GraphError("Gurau degree requires a connected graph")
    if not g.is_closed():
        raise GraphError("Gurau degree requires a closed graph")
    D = g.D
    deg = D + Fraction(D * (D - 1), 4) * g.n_vertices - score(g)
    assert deg.denominator == 1 and deg >= 0
    return deg


def cyclic_orders(colors: Sequence[int]) -> list[tuple[int, ...]]:
    """Cyclic orders of ``colors`` up to reversal, each starting at ``colors[0]``."""
    first, rest = colors[0], list(colors[1:])
    out = []
    for perm in itertools.permutations(rest):
        if len(perm) >= 2 and perm[0] > perm[-1]:
            continue
        out.append((first, *perm))
    return out


def jacket_map(g: ColoredGraph, order: Sequence[int]) -> Map:
    """Regular embedding: rotation ``order`` at black vertices, reversed at white."""
    colors = list(order)
    pos = {c: k for k, c in enumerate(colors)}
    n = len(colors)
    dart = {}
    for v in range(g.n_vertices):
        for c in colors:
            dart[(v, c)] = len(dart)
    sigma = [0] * len(dart)
    alpha = [0] * len(dart)
    for (v, c), d in dart.items():
        step = 1 if g.black[v] else -1
        sigma[d] = dart[(v, colors[(pos[c] + step) % n])]
        alpha[d] = dart[(g.neighbor(v, c), c)]
    return Map(sigma, alpha)


def jackets(g: ColoredGraph) -> list[tuple[tuple[int, ...], Map, int]]:
    """All jackets (cyclic color order, embedded map, genus) of a closed graph."""
    if not g.is_closed():
        raise GraphError("jackets require a closed graph")
    out = []
    for mu in cyclic_orders(list(range(g.D + 1))):
        m = jacket_map(g, mu)
        out.append((mu, m, m.genus()))
    return out


def jacket_degree(g: ColoredGraph) -> Fraction:
    total = sum(genus for _, _, genus in jackets(g))
    return Fraction(2 * total, factorial(g.D - 1))


# ---- boundary -------------------------------------------------------------


def boundary_graph(g: ColoredGraph) -> ColoredGraph:
    """Boundary graph on the vertices missing color 0 (colors ``1..D``).

    Vertex ``k`` of the result is the ``k``-th boundary vertex of ``g``.
    """
    bnd = g.boundary_vertices()
    index = {v: k for k, v in enumerate(bnd)}
    edges = []
    for v in bnd:
        if not g.black[v]:
            continue
        for i in range(1, g.D + 1):
            u = g.neighbor(v, i)
            while u not in index:
                u = g.neighbor(g.neighbor(u, 0), i)
            edges.append((index[v], index[u], i))
    return ColoredGraph(g.D, tuple(g.black[v] for v in bnd), tuple(edges))


# ---- melonic graphs -------------------------------------------------------


@dataclass(frozen=True)
class MelonicWitness:
    melonic: bool
    contractions: tuple[tuple[int, int], ...]
    canonical_pairing: tuple[tuple[int, int], ...] | None


def is_melonic(g: ColoredGraph) -> MelonicWitness:
    """Greedy contraction of maximal parallel pairs down to the elementary melon.

    Works with whatever color set the graph carries (``0..D`` or ``1..D``).
    Contracting such a pair keeps the degree unchanged, so the greedy order
    never matters.
    """
    colors = list(g.colors)
    n = len(colors)
    if not g.is_connected() or any(set(a) != set(colors) for a in g.adjacency):
        return MelonicWitness(False, (), None)
    nbr = [{c: g.neighbor(v, c) for c in colors} for v in range(g.n_vertices)]
    alive = set(range(g.n_vertices))
    steps: list[tuple[int, int]] = []
    while True:
        if len(alive) == 2:
            b, w = sorted(alive, key=lambda v: not g.black[v])
            if all(nbr[b][c] == w for c in colors):
                steps.append((b, w))
                return MelonicWitness(True, tuple(steps), tuple(sorted(steps)))
            return MelonicWitness(False, tuple(steps), None)
        found = None
        for b in sorted(alive):
            if not g.black[b]:
                continue
            counts: dict[int, list[int]] = {}
            for c in colors:
                counts.setdefault(nbr[b][c], []).append(c)
            for w, cs in counts.items():
                if len(cs) == n - 1:
                    found = (b, w, next(c for c in colors if c not in cs))
                    break
                if len(cs) == n:
                    return MelonicWitness(False, tuple(steps), None)
            if found:
                break
        if found is None:
            return MelonicWitness(False, tuple(steps), None)
        b, w, c = found
        w2, b2 = nbr[b][c], nbr[w][c]
        nbr[b2][c] = w2
        nbr[w2][c] = b2
        alive -= {b, w}
        steps.append((b, w))


# ---- simplices ------------------------------------------------------------


@dataclass(frozen=True)
class SimplexCensus:
    counts: tuple[int, ...]  # counts[k] = number of k-simplices

    def euler_sum(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts))


def _components_on(g: ColoredGraph, colors: Iterable[int]) -> list[list[int]]:
    cs = set(colors)
    uf = UnionFind(g.n_vertices)
    for b, w, c in g.edges:
        if c in cs:
            uf.union(b, w)
    groups: dict[int, list[int]] = {}
    for v in range(g.n_vertices):
        groups.setdefault(uf.find(v), []).append(v)
    return list(groups.values())


def simplex_census(g: ColoredGraph) -> SimplexCensus:
    """``n_k`` = components of the subgraphs spanned by each ``(D-k)``-color subset."""
    if not g.is_closed():
        raise GraphError("simplex census requires a closed graph")
    all_colors = range(g.D + 1)
    counts = []
    for k in range(g.D + 1):
        total = 0
        for subset in itertools.combinations(all_colors, g.D - k):
            if not subset:
                total += g.n_vertices
            else:
                total += len(_components_on(g, subset))
        counts.append(total)
    return SimplexCensus(tuple(counts))


def residue_genera(g: ColoredGraph, colors: Sequence[int]) -> list[int]:
    """Genus of each connected component of the 3-colored residue ``colors``."""
    out = []
    for comp in _components_on(g, colors):
        cs = set(comp)
        sub = ColoredGraph(
            2,
            tuple(g.black[v] for v in comp),
            tuple(
                (comp.index(b), comp.index(w), list(colors).index(c))
                for b, w, c in g.edges
                if c in colors and b in cs
            ),
        )
        cycles = sum(len(bicolored_cycles(sub, i, j)) for i, j in ((0, 1), (0, 2), (1, 2)))
        chi = sub.n_vertices - sub.n_edges + cycles
        out.append((2 - chi) // 2)
    return out


def euler_check_3d(g: ColoredGraph) -> bool:
    """Exact manifold test for D = 3: vanishing Euler sum and spherical residues."""
    if g.D != 3:
        raise GraphError("euler_check_3d requires D = 3")
    if simplex_census(g).euler_sum() != 0:
        return False
    return all(
        genus == 0
        for subset in itertools.combinations(range(4), 3)
        for genus in residue_genera(g, subset)
    )


# ---- canonical form -------------------------------------------------------


def _refine(g: ColoredGraph) -> list[int]:
    """Stable color refinement; returns a cell index per vertex."""
    adj = g.adjacency
    cell = [
        (g.black[v], tuple(sorted(adj[v])), tuple(sorted(c for c, e in adj[v].items() if e in g.marked)))
        for v in range(g.n_vertices)
    ]
    ranks = {key: k for k, key in enumerate(sorted(set(cell)))}
    cur = [ranks[c] for c in cell]
    while True:
        sig = [
            (cur[v], tuple(sorted((c, cur[g.neighbor(v, c)]) for c in adj[v])))
            for v in range(g.n_vertices)
        ]
        ranks = {key: k for k, key in enumerate(sorted(set(sig)))}
        nxt = [ranks[s] for s in sig]
        if len(set(nxt)) == len(set(cur)):
            return nxt
        cur = nxt


def _bfs_code(g: ColoredGraph, start: int, colors: Sequence[int]) -> tuple:
    label = {start: 0}
    order = [start]
    queue = deque([start])
    code = []
    while queue:
        v = queue.popleft()
        row = [int(g.black[v])]
        for c in colors:
            e = g.adjacency[v].get(c)
            if e is None:
                row.append(-1)
                continue
            u = g.neighbor(v, c)
            if u not in label:
                label[u] = len(label)
                order.append(u)
                queue.append(u)
            row.append(label[u])
            row.append(1 if e in g.marked else 0)
        code.append(tuple(row))
    return tuple(code)


def canonical_form(g: ColoredGraph) -> str:
    """Isomorphism-invariant label of a vertex-bicolored edge-colored graph.

    Each component is individualised at every vertex of its smallest refined
    cell; a BFS in color order then fixes the whole labelling, and the least
    code wins.  Components are sorted.
    """
    cells = _refine(g)
    colors = list(range(g.D + 1))
    codes = []
    for comp in g.components():
        by_cell: dict[int, list[int]] = {}
        for v in comp:
            by_cell.setdefault(cells[v], []).append(v)
        target = min(by_cell, key=lambda k: (len(by_cell[k]), k))
        codes.append(min(_bfs_code(g, v, colors) for v in by_cell[target]))
    codes.sort()
    body = ";".join("|".join(",".join(map(str, row)) for row in code) for code in codes)
    return f"D{g.D}:{body}"


# ---- DOT export -----------------------------------------------------------

_PALETTE = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"]


def to_dot(g: ColoredGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, isb in enumerate(g.black):
        style = "filled" if isb else "solid"
        lines.append(f'  {v} [shape=circle, style={style}, fillcolor=black, label="{v}"];')
    for idx, (b, w, c) in enumerate(g.edges):
        attrs = [f"color={_PALETTE[c % len(_PALETTE)]}", f'label="{c}"']
        if c == 0:
            attrs.append("style=dashed")
        if idx in g.marked:
            attrs.append("penwidth=3")
        lines.append(f"  {b} -- {w} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
