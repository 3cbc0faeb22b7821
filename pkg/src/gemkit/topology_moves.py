"""Local moves on colored graphs with score bookkeeping.

Every move returns a new graph and a :class:`MoveRecord`.  Topology flags are
``preserved`` only when a decidable sphere test certifies the side condition,
``connected-sum`` when a switch of color-0 edges disconnects the graph, and
``unknown`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    ColoredGraph,
    GraphError,
    bicolored_cycles,
    jackets,
    is_melonic,
    score,
    zero_score,
)
from .maps import UnionFind


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    delta_score: int
    delta_zero_score: int
    topology: str = "unknown"
    common_cycles: int | None = None
    distinct_cycles: int | None = None
    disconnects: bool = False
    data: dict = field(default_factory=dict)


def _scores(g: ColoredGraph) -> tuple[int, int]:
    return score(g), zero_score(g)


def _remove_vertices(
    g: ColoredGraph, doomed: Iterable[int], new_edges: Sequence[tuple[int, int, int]]
) -> tuple[ColoredGraph, list[int]]:
    """Drop vertices and their edges, append ``new_edges`` (old labels), renumber."""
    doomed = set(doomed)
    keep = [v for v in range(g.n_vertices) if v not in doomed]
    new_of = {old: new for new, old in enumerate(keep)}
    edges, marked = [], []
    for idx, (b, w, c) in enumerate(g.edges):
        if b in doomed or w in doomed:
            continue
        if idx in g.marked:
            marked.append(len(edges))
        edges.append((new_of[b], new_of[w], c))
    edges.extend((new_of[b], new_of[w], c) for b, w, c in new_edges)
    black = tuple(g.black[v] for v in keep)
    return ColoredGraph(g.D, black, tuple(edges), frozenset(marked)), keep


def component_of(g: ColoredGraph, v: int, colors: Iterable[int]) -> list[int]:
    cs = set(colors)
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for c in cs:
            y = g.neighbor(x, c)
            if y is not None and y not in seen:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def induced(g: ColoredGraph, vertices: Sequence[int], colors: Sequence[int]) -> ColoredGraph:
    """Subgraph on ``vertices`` and ``colors``, colors renumbered ``0..len-1``."""
    pos = {v: k for k, v in enumerate(vertices)}
    cmap = {c: k for k, c in enumerate(sorted(colors))}
    edges = tuple(
        (pos[b], pos[w], cmap[c]) for b, w, c in g.edges if c in cmap and b in pos and w in pos
    )
    return ColoredGraph(max(len(colors) - 1, 1), tuple(g.black[v] for v in vertices), edges)


def is_certified_sphere(h: ColoredGraph) -> bool:
    """Decidable sufficient sphere tests on a closed connected colored graph."""
    n_colors = len(h.colors)
    dim = n_colors - 1
    if dim <= 0:
        return h.n_vertices == 2
    if dim == 1:
        return h.is_connected()
    if dim == 2:
        phi = sum(len(bicolored_cycles(h, i, j)) for i, j in ((0, 1), (0, 2), (1, 2)))
        return h.n_vertices - h.n_edges + phi == 2
    if is_melonic(h).melonic:
        return True
    if dim == 3:
        return any(genus == 0 for _, _, genus in jackets(h))
    return False


def parallel_colors(g: ColoredGraph, b: int, w: int) -> list[int]:
    return sorted(c for c, e in g.adjacency[b].items() if g.edges[e][1] == w)


def is_dipole(g: ColoredGraph, b: int, w: int, colors: Iterable[int]) -> bool:
    cols = set(colors)
    rest = [c for c in g.colors if c not in cols]
    return w not in component_of(g, b, rest)


def dipole_contract(g: ColoredGraph, pair: tuple[int, int], colors: Iterable[int]) -> tuple[ColoredGraph, MoveRecord]:
    b, w = pair
    if not g.black[b]:
        b, w = w, b
    cols = sorted(set(colors))
    if parallel_colors(g, b, w) != cols:
        raise GraphError(f"vertices {b}, {w} are not joined by exactly the colors {cols}")
    rest = [c for c in g.colors if c not in cols]
    if not is_dipole(g, b, w, cols):
        raise GraphError("not a dipole: the two vertices share a component of the complement")
    before = _scores(g)
    new_edges = [(g.neighbor(w, c), g.neighbor(b, c), c) for c in rest]
    out, keep = _remove_vertices(g, (b, w), new_edges)
    topology = "unknown"
    for v in (b, w):
        comp = component_of(g, v, rest)
        if is_certified_sphere(induced(g, comp, rest)):
            topology = "preserved"
            break
    after = _scores(out)
    record = MoveRecord(
        "dipole-contract",
        (b, w),
        tuple(range(out.n_edges - len(new_edges), out.n_edges)),
        after[0] - before[0],
        after[1] - before[1],
        topology,
        data={"colors": tuple(cols), "keep": tuple(keep), "n_before": g.n_vertices},
    )
    return out, record


def dipole_insert(g: ColoredGraph, edges: Sequence[int], colors: Iterable[int]) -> tuple[ColoredGraph, MoveRecord]:
    """Insert a dipole of ``colors`` cutting one edge of every complementary color.

    The new black vertex is appended at index ``V`` and the new white at ``V+1``.
    """
    cols = sorted(set(colors))
    rest = [c for c in range(g.D + 1) if c not in cols]
    cut = {g.edges[e][2]: e for e in edges}
    if sorted(cut) != rest or len(edges) != len(rest):
        raise GraphError("need exactly one edge of each complementary color")
    if rest:
        comp = set(component_of(g, g.edges[edges[0]][0], rest))
        if any(g.edges[e][0] not in comp for e in edges):
            raise GraphError("cut edges must lie in one component of the complement")
    nb, nw = g.n_vertices, g.n_vertices + 1
    new_edges, marked = [], []
    for idx, e in enumerate(g.edges):
        if idx in set(edges):
            continue
        if idx in g.marked:
            marked.append(len(new_edges))
        new_edges.append(e)
    for c in rest:
        x, y, _ = g.edges[cut[c]]
        new_edges.append((x, nw, c))
        new_edges.append((nb, y, c))
    new_edges.extend((nb, nw, c) for c in cols)
    out = ColoredGraph(g.D, g.black + (True, False), tuple(new_edges), frozenset(marked))
    before, after = _scores(g), _scores(out)
    return out, MoveRecord(
        "dipole-insert",
        (nb, nw),
        tuple(edges),
        after[0] - before[0],
        after[1] - before[1],
        "unknown",
        data={"colors": tuple(cols)},
    )


def switch_edges(g: ColoredGraph, e1: int, e2: int) -> ColoredGraph:
    """Exchange two same-colored edges (b1,w1),(b2,w2) -> (b1,w2),(b2,w1)."""
    if e1 == e2:
        raise GraphError("cannot switch an edge with itself")
    b1, w1, c1 = g.edges[e1]
    b2, w2, c2 = g.edges[e2]
    if c1 != c2:
        raise GraphError("switched edges must share a color")
    edges = list(g.edges)
    edges[e1] = (b1, w2, c1)
    edges[e2] = (b2, w1, c2)
    return g.with_edges(edges, g.marked)


def flip(g: ColoredGraph, e1: int, e2: int) -> ColoredGraph:
    """Switch two same-colored edges incident to the two vertices of an h-dipole."""
    b1, w1, c1 = g.edges[e1]
    b2, w2, c2 = g.edges[e2]
    if c1 != c2:
        raise GraphError("flip needs two edges of the same color")
    # the dipole joins an endpoint of e1 to an endpoint of e2
    for b, w in ((b1, w2), (b2, w1)):
        cols = parallel_colors(g, b, w)
        if 1 <= len(cols) <= g.D - 1 and c1 not in cols and is_dipole(g, b, w, cols):
            return switch_edges(g, e1, e2)
    raise GraphError("edges are not incident to a common h-dipole")


def common_cycle_split(g: ColoredGraph, f: int, f2: int) -> tuple[int, int]:
    """(common, distinct): colors i with f, f2 in the same / different (c,i)-cycles."""
    c = g.edges[f][2]
    common = distinct = 0
    for i in range(g.D + 1):
        if i == c:
            continue
        for cyc in bicolored_cycles(g, c, i):
            vs = set(cyc)
            has1 = g.edges[f][0] in vs
            has2 = g.edges[f2][0] in vs
            if has1 or has2:
                if has1 and has2:
                    common += 1
                else:
                    distinct += 1
                break
    return common, distinct


def rho_switch(g: ColoredGraph, f: int, f2: int) -> tuple[ColoredGraph, MoveRecord]:
    """Switch two color-0 edges; the 0-score changes by D - 2 I2."""
    if f == f2:
        raise GraphError("f and f' must differ")
    if g.edges[f][2] != 0 or g.edges[f2][2] != 0:
        raise GraphError("rho_switch acts on color-0 edges")
    common, _ = common_cycle_split(g, f, f2)
    i2 = g.D - common
    before = _scores(g)
    out = switch_edges(g, f, f2)
    after = _scores(out)
    disconnects = g.is_connected() and not out.is_connected()
    return out, MoveRecord(
        "rho-switch",
        (),
        (f, f2),
        after[0] - before[0],
        after[1] - before[1],
        "connected-sum" if disconnects else "unknown",
        common_cycles=common,
        distinct_cycles=i2,
        disconnects=disconnects,
    )


def connected_sum(g1: ColoredGraph, v1: int, g2: ColoredGraph, v2: int) -> ColoredGraph:
    """Delete ``v1`` and ``v2`` and rejoin their neighbors color by color."""
    if g1.D != g2.D:
        raise GraphError("dimension mismatch")
    if g1.black[v1] == g2.black[v2]:
        raise GraphError("the two vertices must have opposite colors")
    cols1 = set(g1.adjacency[v1])
    if cols1 != set(g2.adjacency[v2]):
        raise GraphError("the two vertices must carry the same colors")
    n1 = g1.n_vertices
    keep1 = [v for v in range(n1) if v != v1]
    keep2 = [v for v in range(g2.n_vertices) if v != v2]
    new1 = {old: k for k, old in enumerate(keep1)}
    new2 = {old: k + len(keep1) for k, old in enumerate(keep2)}
    edges = []
    for b, w, c in g1.edges:
        if v1 not in (b, w):
            edges.append((new1[b], new1[w], c))
    for b, w, c in g2.edges:
        if v2 not in (b, w):
            edges.append((new2[b], new2[w], c))
    for c in sorted(cols1):
        u1, u2 = new1[g1.neighbor(v1, c)], new2[g2.neighbor(v2, c)]
        edges.append((u1, u2, c) if g1.black[v1] is False else (u2, u1, c))
    black = tuple(g1.black[v] for v in keep1) + tuple(g2.black[v] for v in keep2)
    return ColoredGraph(g1.D, black, tuple(edges))


def bubbles_of(g: ColoredGraph) -> list[list[int]]:
    """Connected components after deleting color 0."""
    uf = UnionFind(g.n_vertices)
    for b, w, c in g.edges:
        if c != 0:
            uf.union(b, w)
    groups: dict[int, list[int]] = {}
    for v in range(g.n_vertices):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


def bubble_subgraph(g: ColoredGraph, vertices: Sequence[int]) -> ColoredGraph:
    """The bubble on ``vertices`` with its colors ``1..D`` kept."""
    pos = {v: k for k, v in enumerate(vertices)}
    edges = tuple((pos[b], pos[w], c) for b, w, c in g.edges if c != 0 and b in pos and w in pos)
    return ColoredGraph(g.D, tuple(g.black[v] for v in vertices), edges)


def contract_color0_edge(g: ColoredGraph, e: int) -> ColoredGraph:
    """Contract a color-0 edge joining two distinct bubbles."""
    b, w, c = g.edges[e]
    if c != 0:
        raise GraphError("expected a color-0 edge")
    which = {}
    for k, comp in enumerate(bubbles_of(g)):
        for v in comp:
            which[v] = k
    if which[b] == which[w]:
        raise GraphError("edge is internal to one bubble")
    new_edges = [(g.neighbor(w, i), g.neighbor(b, i), i) for i in range(1, g.D + 1)]
    out, _ = _remove_vertices(g, (b, w), new_edges)
    return out


def find_handles(g: ColoredGraph) -> list[tuple[int, int]]:
    """(D-1)-pairs whose four outer edges lie on a single bicolored cycle."""
    if not g.is_closed():
        raise GraphError("find_handles requires a closed graph")
    found = []
    for b in g.blacks():
        targets: dict[int, list[int]] = {}
        for c in range(g.D + 1):
            targets.setdefault(g.neighbor(b, c), []).append(c)
        for w, cols in sorted(targets.items()):
            if len(cols) != g.D - 1:
                continue
            x, y = [c for c in range(g.D + 1) if c not in cols]
            for cyc in bicolored_cycles(g, x, y):
                if b in cyc:
                    if w in cyc:
                        found.append((b, w))
                    break
    return found
