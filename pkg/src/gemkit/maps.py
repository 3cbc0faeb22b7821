"""Combinatorial maps given by a rotation and an edge involution.

Darts are the integers ``0..n-1``.  ``sigma`` rotates darts around their
vertex, ``alpha`` pairs the two darts of each edge.  Edges listed in
``twisted`` carry a twist factor, so the surface may be non-orientable; face
counts then come from a flag traversal.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def permutation_cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of a permutation of ``range(len(perm))`` in order of first element."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        cycles.append(cycle)
    return cycles


def count_cycles(perm: Sequence[int]) -> int:
    seen = bytearray(len(perm))
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = perm[x]
    return count


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.components -= 1
        return True


def circuit_rank(n_vertices: int, edges: Iterable[tuple[int, int]]) -> int:
    """Circuit rank E - V + K of a multigraph (loops and multi-edges allowed)."""
    uf = UnionFind(n_vertices)
    n_edges = 0
    for a, b in edges:
        n_edges += 1
        uf.union(a, b)
    return n_edges - n_vertices + uf.components


class Map:
    """A (possibly twisted) combinatorial map."""

    def __init__(
        self,
        sigma: Sequence[int],
        alpha: Sequence[int],
        twisted: Iterable[int] = (),
    ) -> None:
        n = len(sigma)
        if len(alpha) != n:
            raise ValueError("sigma and alpha must act on the same darts")
        if sorted(sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation")
        for d in range(n):
            if alpha[d] == d or alpha[alpha[d]] != d:
                raise ValueError("alpha must be a fixed-point-free involution")
        self.sigma = list(sigma)
        self.alpha = list(alpha)
        tw = set(twisted)
        tw |= {self.alpha[d] for d in tw}
        self.twisted = frozenset(tw)

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    def vertices(self) -> list[list[int]]:
        return permutation_cycles(self.sigma)

    def n_vertices(self) -> int:
        return count_cycles(self.sigma)

    def n_edges(self) -> int:
        return self.n_darts // 2

    def face_labels(self) -> list[int]:
        """Face index of each flag ``2*d + side``.

        ``side = 1`` is the side of dart ``d`` facing the corner ``(d, sigma(d))``.
        Faces are the orbits of the flag involutions that keep the face fixed.
        """
        cached = getattr(self, "_face_cache", None)
        if cached is not None:
            return cached
        n = self.n_darts
        sigma, alpha, twisted = self.sigma, self.alpha, self.twisted
        label = [-1] * (2 * n)
        current = 0
        for start in range(2 * n):
            if label[start] != -1:
                continue
            stack = [start]
            label[start] = current
            while stack:
                f = stack.pop()
                d, side = divmod(f, 2)
                # change of edge around the vertex: corner (d, sigma d)
                if side == 1:
                    g = 2 * sigma[d]
                else:
                    g = 2 * self._sigma_inv[d] + 1
                # change of vertex along the edge
                a = alpha[d]
                h = 2 * a + (side if d in twisted else 1 - side)
                for x in (g, h):
                    if label[x] == -1:
                        label[x] = current
                        stack.append(x)
            current += 1
        self._face_cache = label
        return label

    @property
    def _sigma_inv(self) -> list[int]:
        inv = getattr(self, "_inv_cache", None)
        if inv is None:
            inv = [0] * self.n_darts
            for d, s in enumerate(self.sigma):
                inv[s] = d
            self._inv_cache = inv
        return inv

    def n_faces(self) -> int:
        labels = self.face_labels()
        return max(labels) + 1 if labels else 0

    def corner_face(self, dart: int) -> int:
        """Face index of the corner between ``dart`` and ``sigma(dart)``."""
        return self.face_labels()[2 * dart + 1]

    def components(self) -> int:
        uf = UnionFind(self.n_darts)
        for d in range(self.n_darts):
            uf.union(d, self.sigma[d])
            uf.union(d, self.alpha[d])
        return uf.components

    def is_orientable(self) -> bool:
        # orientable iff every cycle has an even number of twists: 2-color the darts
        n = self.n_darts
        orient = [0] * n
        for start in range(n):
            if orient[start]:
                continue
            orient[start] = 1
            stack = [start]
            while stack:
                d = stack.pop()
                for e, flip in ((self.sigma[d], False), (self._sigma_inv[d], False),
                                (self.alpha[d], d in self.twisted)):
                    want = -orient[d] if flip else orient[d]
                    if orient[e] == 0:
                        orient[e] = want
                        stack.append(e)
                    elif orient[e] != want:
                        return False
        return True

    def euler_characteristic(self) -> int:
        return self.n_vertices() - self.n_edges() + self.n_faces()

    def genus(self) -> int:
        """Orientable genus, summed over connected components."""
        if not self.is_orientable():
            raise ValueError("genus requested for a non-orientable map")
        twice = 2 * self.components() - self.euler_characteristic()
        assert twice % 2 == 0
        return twice // 2

    def circuit_rank(self) -> int:
        return self.n_edges() - self.n_vertices() + self.components()


def map_code(sigma: Sequence[int], alpha: Sequence[int]) -> tuple[int, ...]:
    """Isomorphism-invariant code of a connected map (orientation preserving)."""
    n = len(sigma)
    best: tuple[int, ...] | None = None
    for root in range(n):
        order = {root: 0}
        queue = [root]
        k = 0
        while k < len(queue):
            d = queue[k]
            k += 1
            for e in (sigma[d], alpha[d]):
                if e not in order:
                    order[e] = len(queue)
                    queue.append(e)
        code = tuple(x for d in queue for x in (order[sigma[d]], order[alpha[d]]))
        if best is None or code < best:
            best = code
    return best or ()


def connected_maps(n_edges: int) -> list[Map]:
    """All connected maps with ``n_edges`` edges, one per isomorphism class.

    Each class is grown from a smaller map by adding one edge, either a
    pendant edge in some corner or an edge between two corners.
    """
    if n_edges < 1:
        raise ValueError("need at least one edge")
    loop = ((1, 0), (1, 0))
    segment = ((0, 1), (1, 0))
    level = {map_code(*m): m for m in (loop, segment)}
    for _ in range(n_edges - 1):
        nxt: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
        for sigma, alpha in level.values():
            n = len(sigma)
            x, y = n, n + 1
            for d in range(n):
                base = list(sigma) + [0, 0]
                base[x] = base[d]
                base[d] = x
                new_alpha = list(alpha) + [y, x]
                # pendant edge: y alone on a new vertex
                leaf = base.copy()
                leaf[y] = y
                cand = [leaf]
                for d2 in range(n + 1):
                    two = base.copy()
                    two[y] = two[d2]
                    two[d2] = y
                    cand.append(two)
                for s in cand:
                    key = map_code(s, new_alpha)
                    if key not in nxt:
                        nxt[key] = (tuple(s), tuple(new_alpha))
        level = nxt
    return [Map(s, a) for s, a in level.values()]
