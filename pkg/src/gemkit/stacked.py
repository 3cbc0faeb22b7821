"""Stacked maps of colored graphs with a pairing.

The white vertices of a stacked map are the pairs ``l = (b_l, w_l)`` of a
pairing.  For each color ``c`` the permutation ``pi[c]`` sends ``l`` to the
pair containing the color-``c`` neighbour of ``b_l``; its cycles are the
color-``c`` star vertices, with cyclic order given by ``pi[c]``.  In the
zero-reversed convention the color-0 stars are read backwards, which makes
the (0, i) submaps untwisted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .core import ColoredGraph, GraphError, boundary_graph, from_permutations
from .maps import Map, UnionFind, count_cycles, permutation_cycles
from .pairings import Pairing, check_pairing, optimal_pairings, zero_score_of_covering
from .topology_moves import bubble_subgraph, bubbles_of


def _inverse(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for k, v in enumerate(perm):
        inv[v] = k
    return inv


@dataclass(frozen=True)
class StackedMap:
    D: int
    pi: dict[int, tuple[int, ...]]
    zero_reversed: bool = False
    marked: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        sizes = {len(p) for p in self.pi.values()}
        if len(sizes) != 1:
            raise GraphError("star permutations must act on the same white vertices")
        for c, p in self.pi.items():
            if sorted(p) != list(range(len(p))):
                raise GraphError(f"color {c}: not a permutation")
        if self.marked and 0 not in self.pi:
            raise GraphError("marked corners need color-0 stars")
        stars = {}
        for m in self.marked:
            root = min(self.star_of(0, m))
            if root in stars:
                raise GraphError("at most one marked corner per color-0 vertex")
            stars[root] = m

    @property
    def n_white(self) -> int:
        return len(next(iter(self.pi.values())))

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted(self.pi))

    def rotation(self, c: int) -> list[int]:
        """Successor of each white vertex around its color-``c`` star."""
        p = list(self.pi[c])
        return _inverse(p) if c == 0 and self.zero_reversed else p

    def stars(self, c: int) -> list[list[int]]:
        return permutation_cycles(self.rotation(c))

    def star_of(self, c: int, l: int) -> list[int]:
        for s in self.stars(c):
            if l in s:
                return s
        raise AssertionError("unreachable")

    def is_twisted(self, i: int, j: int) -> bool:
        return not (self.zero_reversed and 0 in (i, j))

    def submap(self, i: int, j: int) -> Map:
        """Bicolored (i, j) submap with the degree-2 white vertices smoothed.

        Dart ``2l`` is the color-``i`` half of white ``l``, dart ``2l+1`` the
        color-``j`` half.
        """
        ri, rj = self.rotation(i), self.rotation(j)
        n = self.n_white
        sigma = [0] * (2 * n)
        alpha = [0] * (2 * n)
        for l in range(n):
            sigma[2 * l] = 2 * ri[l]
            sigma[2 * l + 1] = 2 * rj[l] + 1
            alpha[2 * l], alpha[2 * l + 1] = 2 * l + 1, 2 * l
        twisted = range(0, 2 * n, 2) if self.is_twisted(i, j) else ()
        return Map(sigma, alpha, twisted)

    def marked_corner_darts(self) -> list[int]:
        """Color-0 darts (white indices) whose following corner is marked."""
        if self.zero_reversed:
            return [self.pi[0][m] for m in sorted(self.marked)]
        return sorted(self.marked)

    def faces(self, i: int, j: int) -> int:
        return self.submap(i, j).n_faces()

    def interior_faces(self, i: int) -> int:
        """Faces of the (0, i) submap meeting no marked corner."""
        m = self.submap(0, i)
        labels = m.face_labels()
        broken = {labels[2 * (2 * d) + 1] for d in self.marked_corner_darts()}
        return m.n_faces() - len(broken)

    def zero_score(self) -> int:
        return sum(self.interior_faces(i) for i in self.colors if i != 0)

    def full_zero_score(self) -> int:
        return sum(self.faces(0, i) for i in self.colors if i != 0)

    def score(self) -> int:
        total = 0
        for i, j in itertools.combinations(self.colors, 2):
            total += self.interior_faces(j) if i == 0 else self.faces(i, j)
        return total

    def circuit_rank(self) -> int:
        """Circuit rank of the whole map (white vertices, stars and edges)."""
        n = self.n_white
        uf = UnionFind(n)
        n_stars = 0
        for c in self.colors:
            n_stars += count_cycles(self.pi[c])
            for l, m in enumerate(self.pi[c]):
                uf.union(l, m)
        edges = n * len(self.colors)
        return edges - (n + n_stars) + uf.components

    def components(self) -> int:
        uf = UnionFind(self.n_white)
        for p in self.pi.values():
            for l, m in enumerate(p):
                uf.union(l, m)
        return uf.components

    def with_pi(self, c: int, perm: Sequence[int], marked: frozenset[int] | None = None) -> StackedMap:
        pi = dict(self.pi)
        pi[c] = tuple(perm)
        return StackedMap(self.D, pi, self.zero_reversed, self.marked if marked is None else marked)


@dataclass(frozen=True)
class SubmapReport:
    faces: dict[int, int]
    interior_faces: dict[int, int]
    circuit_ranks: dict[int, int]
    genera: dict[int, int]
    projected_rank: int | None


def submap_report(gamma: StackedMap) -> SubmapReport:
    faces, fint, ranks, genera = {}, {}, {}, {}
    for i in gamma.colors:
        if i == 0:
            continue
        m = gamma.submap(0, i)
        faces[i] = m.n_faces()
        fint[i] = gamma.interior_faces(i)
        ranks[i] = m.circuit_rank()
        genera[i] = m.genus()
    proj = projected(gamma).circuit_rank() if 0 in gamma.pi else None
    return SubmapReport(faces, fint, ranks, genera, proj)


# ---- the bijections ---------------------------------------------------------


def _pair_index(g: ColoredGraph, pairing: Pairing) -> dict[int, int]:
    where = {}
    for l, (x, y) in enumerate(pairing):
        where[x] = l
        where[y] = l
    return where


def _build(g: ColoredGraph, pairing: Sequence[tuple[int, int]], zero_reversed: bool) -> StackedMap:
    om = check_pairing(g, pairing)
    where = _pair_index(g, om)
    pi = {}
    for c in g.colors:
        pi[c] = tuple(where[g.neighbor(x, c)] for x, _ in om)
    marked = set()
    for e in g.marked:
        marked.add(where[g.edges[e][0]])
    for c in range(g.D + 1):
        if c not in pi:
            raise GraphError(f"color {c} missing; psi needs every vertex to carry every color")
    return StackedMap(g.D, pi, zero_reversed, frozenset(marked))


def psi(g: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> StackedMap:
    """Stacked map of a closed graph with any black-white pairing."""
    return _build(g, pairing, zero_reversed=False)


def psi_inverse(gamma: StackedMap) -> tuple[ColoredGraph, Pairing]:
    """Graph and pairing of a stacked map; pair ``l`` becomes (2l+1, 2l)."""
    g = from_permutations(gamma.D, {c: list(p) for c, p in gamma.pi.items()}, gamma.marked)
    return g, tuple((2 * l + 1, 2 * l) for l in range(gamma.n_white))


def bubble_pairing(g: ColoredGraph) -> Pairing:
    """Least optimal pairing of every bubble of ``g``, as one pairing of ``g``."""
    pairs = []
    for comp in bubbles_of(g):
        b = bubble_subgraph(g, comp)
        _, opts = optimal_pairings(b)
        pairs.extend((comp[x], comp[y]) for x, y in opts[0])
    return tuple(sorted(pairs))


def psi0(g: ColoredGraph, pairing: Sequence[tuple[int, int]] | None = None) -> StackedMap:
    """Stacked map of a bubble gluing; every pair must lie inside one bubble."""
    if pairing is None:
        pairing = bubble_pairing(g)
    which = {}
    for k, comp in enumerate(bubbles_of(g)):
        for v in comp:
            which[v] = k
    for x, y in pairing:
        if which[x] != which[y]:
            raise GraphError(f"pair ({x}, {y}) straddles two bubbles")
    return _build(g, pairing, zero_reversed=True)


def psi_color(g: ColoredGraph, i: int) -> StackedMap:
    """Stacked map for the pairing given by the color-``i`` edges."""
    if not 0 <= i <= g.D:
        raise GraphError(f"color {i} out of range")
    if g.marked and i == 0:
        raise GraphError("color 0 cannot induce the pairing of a graph with marked edges")
    pairing = [(b, w) for b, w, c in g.edges if c == i]
    return psi(g, pairing)


# ---- unhooking ---------------------------------------------------------------


@dataclass(frozen=True)
class Unhooked:
    gamma: StackedMap
    i2: int
    delta_zero_score: int
    disconnects: bool


def i2(gamma: StackedMap, l: int) -> int:
    """Colors for which the two sides of the color-0 edge of ``l`` lie on distinct faces."""
    count = 0
    for i in gamma.colors:
        if i == 0:
            continue
        labels = gamma.submap(0, i).face_labels()
        if labels[4 * l] != labels[4 * l + 1]:
            count += 1
    return count


def unhook(gamma: StackedMap, l: int) -> Unhooked:
    """Detach white ``l`` from its color-0 star onto a new star of its own.

    ``delta_zero_score`` counts every (0, i) face, marked corners included;
    broken faces may merge or split differently.
    """
    p0 = list(gamma.pi[0])
    if p0[l] == l:
        raise GraphError("white vertex is already alone on its color-0 star")
    pred = p0.index(l)
    if l in gamma.marked or pred in gamma.marked:
        raise GraphError("edge carries a marked corner")
    k = i2(gamma, l)
    p0[pred] = p0[l]
    p0[l] = l
    new = gamma.with_pi(0, p0)
    return Unhooked(new, k, gamma.D - 2 * k, new.components() > gamma.components())


def hook(gamma: StackedMap, l: int, pred: int) -> StackedMap:
    """Inverse of :func:`unhook`: insert lone white ``l`` after ``pred`` in its star."""
    p0 = list(gamma.pi[0])
    if p0[l] != l or pred == l:
        raise GraphError("white vertex must be alone and distinct from its new neighbour")
    p0[l] = p0[pred]
    p0[pred] = l
    return gamma.with_pi(0, p0)


# ---- projected map and connectivity ------------------------------------------


@dataclass(frozen=True)
class ProjectedMap:
    n_bubbles: int
    n_stars: int
    edges: tuple[tuple[int, int], ...]  # (bubble, star) per white vertex

    def circuit_rank(self) -> int:
        n = self.n_bubbles + self.n_stars
        uf = UnionFind(n)
        for b, s in self.edges:
            uf.union(b, self.n_bubbles + s)
        return len(self.edges) - n + uf.components

    def is_tree(self) -> bool:
        return self.circuit_rank() == 0


def bubble_classes(gamma: StackedMap) -> list[int]:
    """Bubble index of each white vertex."""
    uf = UnionFind(gamma.n_white)
    for c in gamma.colors:
        if c == 0:
            continue
        for l, m in enumerate(gamma.pi[c]):
            uf.union(l, m)
    roots: dict[int, int] = {}
    return [roots.setdefault(uf.find(l), len(roots)) for l in range(gamma.n_white)]


def projected(gamma: StackedMap) -> ProjectedMap:
    bubble = bubble_classes(gamma)
    star = {}
    for k, s in enumerate(gamma.stars(0)):
        for l in s:
            star[l] = k
    edges = tuple((bubble[l], star[l]) for l in range(gamma.n_white))
    return ProjectedMap(max(bubble) + 1, len(gamma.stars(0)), edges)


def is_tree(gamma: StackedMap) -> bool:
    return projected(gamma).is_tree()


def face_exploration(gamma: StackedMap, start: int = 0) -> list[int]:
    """Number of visits (0, 1 or 2) of each white vertex, exploring from ``start``.

    A white vertex is visited once through its black half and once through its
    white half.
    """
    inv = {c: _inverse(p) for c, p in gamma.pi.items()}
    visits = [0] * gamma.n_white
    seen = set()
    stack = [(start, 1)]  # (pair, 1 = black half, 0 = white half)
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        l, half = node
        visits[l] += 1
        for c, p in gamma.pi.items():
            nxt = (p[l], 0) if half else (inv[c][l], 1)
            if nxt not in seen:
                stack.append(nxt)
    return visits


def face_exploration_connected(gamma: StackedMap) -> tuple[bool, list[int]]:
    """Connectivity of the underlying graph and the once-visited white vertices."""
    visits = face_exploration(gamma)
    once = [l for l, v in enumerate(visits) if v == 1]
    return all(v == 2 for v in visits), once


# ---- boundary ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryReport:
    graph: ColoredGraph
    pairing: Pairing
    zero_score: int
    consistent: bool


def boundary_of_map(gamma: StackedMap) -> BoundaryReport:
    """Boundary graph read off the broken faces, with its pairing by marked edges.

    Vertex ``k`` of the result is the ``k``-th boundary vertex of
    ``psi_inverse(gamma)`` once the marked edges are removed.
    """
    if not gamma.marked:
        raise GraphError("no marked corner")
    p0 = gamma.pi[0]
    inv0 = _inverse(p0)
    ends = {p0[m] for m in gamma.marked}  # white halves missing color 0
    verts = sorted([2 * m + 1 for m in gamma.marked] + [2 * x for x in ends])
    index = {v: k for k, v in enumerate(verts)}
    edges = []
    for m in sorted(gamma.marked):
        for i in gamma.colors:
            if i == 0:
                continue
            x = gamma.pi[i][m]
            while x not in ends:
                x = gamma.pi[i][inv0[x]]
            edges.append((index[2 * m + 1], index[2 * x], i))
    black = tuple(v % 2 == 1 for v in verts)
    bnd = ColoredGraph(gamma.D, black, tuple(edges))
    pairing = tuple(sorted((index[2 * m + 1], index[2 * p0[m]]) for m in gamma.marked))
    phi0 = zero_score_of_covering(bnd, pairing)
    consistent = gamma.full_zero_score() - gamma.zero_score() == phi0
    return BoundaryReport(bnd, pairing, phi0, consistent)


def graph_boundary(g: ColoredGraph) -> ColoredGraph:
    """Boundary graph of a graph whose marked color-0 edges are removed."""
    kept = [e for k, e in enumerate(g.edges) if k not in g.marked]
    return boundary_graph(g.with_edges(kept))


# ---- simplified maps ----------------------------------------------------------


@dataclass(frozen=True)
class SimplifiedMap:
    """Per bubble, the single non-leaf star of each color (or none)."""

    gamma: StackedMap
    bubbles: tuple[tuple[int, ...], ...]
    stars: tuple[dict[int, tuple[int, ...]], ...]

    def edge_labels(self) -> list[frozenset[int]]:
        """Colors whose star at each white vertex is a leaf."""
        labels = []
        for l in range(self.gamma.n_white):
            labels.append(frozenset(c for c in self.gamma.colors if c != 0 and self.gamma.pi[c][l] == l))
        return labels

    def faces(self, i: int) -> int:
        """Faces of the color-``i`` part, walked on the simplified data."""
        succ = list(range(self.gamma.n_white))
        for star in self.stars:
            cyc = star.get(i)
            if cyc:
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    succ[a] = b
        r0 = self.gamma.rotation(0)
        inv0 = _inverse(r0)
        return count_cycles([succ[inv0[l]] for l in range(self.gamma.n_white)])


def simplified_map(g: ColoredGraph, pairing: Sequence[tuple[int, int]] | None = None) -> SimplifiedMap:
    gamma = psi0(g, pairing)
    bubble = bubble_classes(gamma)
    groups: dict[int, list[int]] = {}
    for l, k in enumerate(bubble):
        groups.setdefault(k, []).append(l)
    per_bubble = []
    for k in sorted(groups):
        members = set(groups[k])
        stars = {}
        for c in gamma.colors:
            if c == 0:
                continue
            big = [s for s in gamma.stars(c) if len(s) > 1 and s[0] in members]
            if len(big) > 1:
                raise GraphError(f"bubble {k} has two non-leaf stars of color {c}")
            if big:
                stars[c] = tuple(big[0])
        per_bubble.append(stars)
    return SimplifiedMap(gamma, tuple(tuple(groups[k]) for k in sorted(groups)), tuple(per_bubble))


# ---- quartic melonic gluings -------------------------------------------------------


@dataclass(frozen=True)
class QuarticMap:
    D: int
    map: Map
    colors: tuple[int, ...]  # color of the edge of each dart
    marked: frozenset[int]  # darts whose following corner is marked

    @property
    def n_edges(self) -> int:
        return self.map.n_edges()

    def color_submap(self, i: int) -> Map | None:
        darts = [d for d in range(self.map.n_darts) if self.colors[d] == i]
        if not darts:
            return None
        index = {d: k for k, d in enumerate(darts)}
        sigma = []
        for d in darts:
            e = self.map.sigma[d]
            while self.colors[e] != i:
                e = self.map.sigma[e]
            sigma.append(index[e])
        alpha = [index[self.map.alpha[d]] for d in darts]
        return Map(sigma, alpha)


def quartic_melonic_color(b: ColoredGraph) -> int | None:
    """Color of the crossing edges of a quartic melonic bubble, or None."""
    if b.n_vertices != 4:
        return None
    x = b.blacks()[0]
    targets: dict[int, list[int]] = {}
    for c in range(1, b.D + 1):
        targets.setdefault(b.neighbor(x, c), []).append(c)
    for cols in targets.values():
        if len(cols) == 1 and b.D > 2:
            return cols[0]
    if b.D == 2:
        return 1
    return None


def quartic_map(g: ColoredGraph) -> QuarticMap:
    """Edge-colored map of a gluing of quartic melonic bubbles."""
    pairing = []
    for comp in bubbles_of(g):
        b = bubble_subgraph(g, comp)
        i = quartic_melonic_color(b)
        if i is None:
            raise GraphError("non-quartic bubble present")
        for x in b.blacks():
            y = next(w for w in b.whites() if b.neighbor(x, i) != w)
            pairing.append((comp[x], comp[y]))
    gamma = psi0(g, pairing)
    rot = gamma.rotation(0)
    n = gamma.n_white
    alpha = [0] * n
    colors = [0] * n
    for c in gamma.colors:
        if c == 0:
            continue
        for l, m in enumerate(gamma.pi[c]):
            if m != l:
                alpha[l] = m
                colors[l] = c
    return QuarticMap(g.D, Map(rot, alpha), tuple(colors), frozenset(gamma.marked_corner_darts()))


@dataclass(frozen=True)
class QuarticReport:
    delta: int
    polychromatic_rank: int
    ranks: dict[int, int]
    genera: dict[int, int]
    label: str
    boundary_bound: int | None = None


def quartic_order_label(D: int, poly: int, ranks: Sequence[int], genera: Sequence[int]) -> str:
    """Name of the order of a quartic map among the three lowest ones."""
    mono, gen = sum(ranks), sum(genera)
    if poly == 0 and mono == 0:
        return "tree"
    if poly == 0 and mono == 1 and gen == 0:
        return "single-monochromatic-cycle"
    if poly == 1 and mono == 0 and D >= 4:
        return "single-polychromatic-cycle"
    if poly == 0 and mono == 2 and gen == 0 and D in (3, 4):
        return "two-monochromatic-cycles"
    return "higher"


def quartic_decomposition(qm: QuarticMap, boundary_rank: int = 0) -> QuarticReport:
    """Degree of a quartic map from its polychromatic and monochromatic cycles."""
    D = qm.D
    ranks, genera = {}, {}
    for i in range(1, D + 1):
        sub = qm.color_submap(i)
        ranks[i] = 0 if sub is None else sub.circuit_rank()
        genera[i] = 0 if sub is None else sub.genus()
    poly = qm.map.circuit_rank() - sum(ranks.values())
    if qm.marked:
        fint = sum(_interior_color_faces(qm, i) for i in range(1, D + 1))
        delta = D + (D - 1) * qm.n_edges - fint
        q = len(qm.marked)
        bound = 1 + (D - 1) * (q + boundary_rank)
    else:
        delta = D * poly + (D - 2) * sum(ranks.values()) + 2 * sum(genera.values())
        bound = None
    label = quartic_order_label(D, poly, list(ranks.values()), list(genera.values()))
    return QuarticReport(delta, poly, ranks, genera, label, bound)


def _interior_color_faces(qm: QuarticMap, i: int) -> int:
    """Faces of the color-``i`` submap (every vertex kept) avoiding marked corners."""
    sigma = qm.map.sigma
    darts = [d for d in range(qm.map.n_darts) if qm.colors[d] == i]
    index = {d: k for k, d in enumerate(darts)}
    sub = qm.color_submap(i)
    labels = sub.face_labels() if sub is not None else []
    n_faces = sub.n_faces() if sub is not None else 0
    # vertices without color-i darts are isolated and bound one face each
    vertex_of = {}
    isolated = []
    for k, cyc in enumerate(qm.map.vertices()):
        for d in cyc:
            vertex_of[d] = k
        if not any(qm.colors[d] == i for d in cyc):
            isolated.append(k)
    broken: set[object] = set()
    for d in qm.marked:
        e = sigma[d]
        steps = 0
        while qm.colors[e] != i and steps <= len(sigma):
            e = sigma[e]
            steps += 1
        if qm.colors[e] != i:
            broken.add(("isolated", vertex_of[d]))
            continue
        # corner of the submap that ends at e: it follows the previous color-i dart
        prev = sub.sigma.index(index[e])
        broken.add(labels[2 * prev + 1])
    return n_faces + len(isolated) - len(broken)


def quartic_gluing(m: Map, colors: Sequence[int], D: int) -> ColoredGraph:
    """Gluing of quartic melonic bubbles whose quartic map is ``m`` with edge ``colors``."""
    n = m.n_darts
    pi = {0: tuple(_inverse(m.sigma))}
    for c in range(1, D + 1):
        pi[c] = tuple(m.alpha[d] if colors[d] == c else d for d in range(n))
    g, _ = psi_inverse(StackedMap(D, pi, zero_reversed=True))
    return g


def set_partitions(n: int, max_blocks: int) -> list[list[int]]:
    """Restricted growth strings of length ``n`` with at most ``max_blocks`` blocks."""
    out = []

    def grow(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            out.append(prefix.copy())
            return
        for b in range(min(top + 2, max_blocks)):
            prefix.append(b)
            grow(prefix, max(top, b))
            prefix.pop()

    grow([], -1)
    return out


def stacked_to_dot(gamma: StackedMap, name: str = "Psi") -> str:
    """DOT drawing: white squares, colored squares for stars, a cilium on marked corners."""
    palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"]
    lines = [f"graph {name} {{"]
    for l in range(gamma.n_white):
        lines.append(f'  w{l} [shape=square, label="{l}"];')
    marked_pairs = set(gamma.marked)
    for c in gamma.colors:
        color = palette[c % len(palette)]
        for k, star in enumerate(gamma.stars(c)):
            node = f"s{c}_{k}"
            lines.append(f'  {node} [shape=square, style=filled, fillcolor={color}, label="{c}"];')
            for l in star:
                style = ", style=dashed" if c == 0 else ""
                lines.append(f"  {node} -- w{l} [color={color}{style}];")
            if c == 0 and marked_pairs & set(star):
                lines.append(f'  {node}_cilium [shape=point]; {node} -- {node}_cilium [penwidth=2];')
    lines.append("}")
    return "\n".join(lines) + "\n"
