"""Named bubbles and small graphs used as regression fixtures."""

from __future__ import annotations

from typing import Sequence

from .core import ColoredGraph, GraphError, from_permutations
from .topology_moves import connected_sum


def k_cyclic(D: int, k: int, p: int) -> ColoredGraph:
    """Cycle of 2p vertices alternating k parallel colors ``1..k`` and the other D-k."""
    if not 1 <= k < D or p < 1:
        raise GraphError("need 1 <= k < D and p >= 1")
    perms = {}
    for c in range(1, D + 1):
        perms[c] = list(range(p)) if c <= k else [(m + 1) % p for m in range(p)]
    return from_permutations(D, perms)


def quartic_melonic(D: int, color: int = 1) -> ColoredGraph:
    """Four-vertex melonic bubble whose two (D-1)-pairs miss ``color``."""
    perms = {c: [0, 1] for c in range(1, D + 1)}
    perms[color] = [1, 0]
    return from_permutations(D, perms)


def k33() -> ColoredGraph:
    """K_{3,3} with pairs (k, k') joined by color k+1."""
    return from_permutations(3, {1: [0, 2, 1], 2: [2, 1, 0], 3: [1, 0, 2]})


def k33_optimal_pairing() -> tuple[tuple[int, int], ...]:
    return ((1, 0), (3, 2), (5, 4))


def ribbon(D: int, q: int, rails: Sequence[int] | None = None) -> ColoredGraph:
    """Ring of q rungs; consecutive rungs are joined by two edges of one rail color.

    Rung k joins black k and white k by every color except the rail colors of
    its two sides.  Default rails alternate colors 1 and 2 (q even); with D = 3
    this is the bipyramid on 2q vertices.
    """
    if rails is None:
        if q % 2:
            raise GraphError("alternating rails need an even number of rungs")
        rails = [1 + (k % 2) for k in range(q)]
    rails = list(rails)
    if len(rails) != q:
        raise GraphError("one rail color per consecutive rung pair")
    perms: dict[int, list[int]] = {c: [-1] * q for c in range(1, D + 1)}
    for k in range(q):
        j = rails[k]  # between rung k and rung k+1
        if rails[k - 1] == j:
            raise GraphError("adjacent rails must differ")
        perms[j][k] = (k + 1) % q
        perms[j][(k + 1) % q] = k
    for k in range(q):
        for c in range(1, D + 1):
            if perms[c][k] == -1:
                perms[c][k] = k
    return from_permutations(D, perms)


def ribbon_rung_pairing(q: int) -> tuple[tuple[int, int], ...]:
    return tuple((2 * k + 1, 2 * k) for k in range(q))


def bipyramid(p: int) -> ColoredGraph:
    """Bipyramid bubble B_p on 4p vertices (p = 2 is the octahedron)."""
    return ribbon(3, 2 * p)


def octahedron() -> ColoredGraph:
    return bipyramid(2)


def toroidal_k4() -> ColoredGraph:
    """Toroidal bubble on 8 vertices with exactly two optimal pairings."""
    return from_permutations(3, {1: [0, 1, 2, 3], 2: [1, 0, 3, 2], 3: [2, 3, 1, 0]})


def k334_1() -> ColoredGraph:
    """K_{3,3} plus a fourth color doubling the optimal pairing."""
    return from_permutations(4, {1: [0, 2, 1], 2: [2, 1, 0], 3: [1, 0, 2], 4: [0, 1, 2]})


def k334_2() -> ColoredGraph:
    """K_{3,3} plus a fourth color doubling one pair and crossing the other two."""
    return from_permutations(4, {1: [0, 2, 1], 2: [2, 1, 0], 3: [1, 0, 2], 4: [1, 0, 2]})


def ord6_necklike() -> ColoredGraph:
    """2-cyclic quartic bubble with a 3-pair inserted on one edge."""
    # 2-cyclic D=4 size 2: colors 1,2 on (b_m, w_m), colors 3,4 on (b_m, w_{m+1}).
    # The color-4 edge (b_1, w_0) is cut by a new pair (b_2, w_2) joined by 1,2,3.
    return from_permutations(4, {1: [0, 1, 2], 2: [0, 1, 2], 3: [1, 0, 2], 4: [1, 2, 0]})


def meander1() -> ColoredGraph:
    """Connected sum of two differently colored 2-cyclic quartic bubbles."""
    first = k_cyclic(4, 2, 2)
    second = from_permutations(4, {1: [0, 1], 3: [0, 1], 2: [1, 0], 4: [1, 0]})
    return connected_sum(first, 1, second, 0)


_S3_NONTRIVIAL = [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]


def k336() -> ColoredGraph:
    """Six-vertex D = 6 bubble whose colors are the six permutations of three letters.

    Color 6 is the identity, so it joins the pairs (k, k').
    """
    perms = {c + 1: list(s) for c, s in enumerate(_S3_NONTRIVIAL)}
    perms[6] = [0, 1, 2]
    return from_permutations(6, perms)


def swap_colors(g: ColoredGraph) -> ColoredGraph:
    """Exchange black and white vertices."""
    return ColoredGraph(g.D, tuple(not x for x in g.black), tuple((w, b, c) for b, w, c in g.edges))


def k336_bar() -> ColoredGraph:
    return swap_colors(k336())


CUBE_EXCLUDED = ({1, 6}, {2, 4}, {3, 5})


def four_cube_gluing(first_side: Sequence[int]) -> ColoredGraph:
    """Four cubes: a 4-cycle alternating the colors ``first_side`` and the rest of 1..6."""
    side = set(first_side)
    perms = {c: ([0, 1] if c in side else [1, 0]) for c in range(1, 7)}
    return from_permutations(6, perms)


FOUR_CUBE_CASES = {
    "4,1": (1,),
    "4,2a": (1, 2),
    "4,2b": (1, 6),
    "4,3a": (1, 2, 3),
    "4,3b": (1, 6, 2),
}

FOUR_CUBE_EXPECTED = {"4,1": 20, "4,2a": 18, "4,2b": 17, "4,3a": 18, "4,3b": 16}


def k33_coverings() -> list[ColoredGraph]:
    """The three optimal coverings of K_{3,3} (size-one patterns)."""
    from .pairings import covering, optimal_pairings

    b = k33()
    return [covering(b, om) for om in optimal_pairings(b)[1]]


def k33_theta_patterns() -> list[ColoredGraph]:
    """Size-two K_{3,3} patterns: three color-0 stars, each meeting both bubbles once.

    Pair l of the first bubble is crossed with pair tau(l) of the second, for all
    optimal pairings and all tau; the gluings reaching 0-score 9 are kept.
    """
    import itertools

    from .core import canonical_form, disjoint_union, zero_score
    from .pairings import optimal_pairings

    b = k33()
    opts = optimal_pairings(b)[1]
    union = disjoint_union([b, b])
    shift = b.n_vertices
    found: dict[str, ColoredGraph] = {}
    for p1, p2 in itertools.product(opts, repeat=2):
        for tau in itertools.permutations(range(len(p1))):
            edges = list(union.edges)
            for l, (b1, w1) in enumerate(p1):
                b2, w2 = p2[tau[l]]
                edges += [(b1, w2 + shift, 0), (b2 + shift, w1, 0)]
            g = union.with_edges(edges)
            if zero_score(g) == 9:
                found.setdefault(canonical_form(g), g)
    return [found[k] for k in sorted(found)]
