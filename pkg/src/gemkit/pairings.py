"""Pairings and coverings of bubbles, optimal pairings and scaling coefficients."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .core import ColoredGraph, GraphError, score, zero_score
from .maps import circuit_rank, count_cycles

Pairing = tuple[tuple[int, int], ...]

DEFAULT_PAIR_CAP = 10


class CapExceeded(RuntimeError):
    """Raised when a search would exceed its configured size cap."""


def _require_bubble(b: ColoredGraph) -> None:
    if not b.is_bubble():
        raise GraphError("expected a bubble (colors 1..D at every vertex, no color 0)")


def normalize(pairing: Sequence[tuple[int, int]]) -> Pairing:
    return tuple(sorted((int(x), int(y)) for x, y in pairing))


def check_pairing(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> Pairing:
    om = normalize(pairing)
    used = [v for pair in om for v in pair]
    if sorted(used) != list(range(b.n_vertices)):
        raise GraphError("pairing is not a perfect matching of the vertices")
    for x, y in om:
        if not b.black[x] or b.black[y]:
            raise GraphError(f"pair ({x}, {y}) must be (black, white)")
    return om


def enumerate_pairings(b: ColoredGraph) -> Iterator[Pairing]:
    """All black-white perfect matchings, in lexicographic order."""
    blacks, whites = b.blacks(), b.whites()
    if len(blacks) != len(whites):
        raise GraphError("unbalanced graph has no pairing")
    for perm in itertools.permutations(whites):
        yield tuple(zip(blacks, perm))


def covering(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> ColoredGraph:
    """Closed graph obtained by joining each pair with a color-0 edge."""
    _require_bubble(b)
    om = check_pairing(b, pairing)
    return b.with_edges(list(b.edges) + [(x, y, 0) for x, y in om])


def parallel_pairs(b: ColoredGraph) -> dict[tuple[int, int], int]:
    """Multiplicity h of every (black, white) pair joined by at least one edge."""
    return dict(Counter((x, y) for x, y, _ in b.edges))


class _Fast:
    """Permutation view of a bubble for fast 0-score evaluation."""

    def __init__(self, b: ColoredGraph) -> None:
        self.blacks = b.blacks()
        self.whites = b.whites()
        self.bidx = {v: k for k, v in enumerate(self.blacks)}
        self.widx = {v: k for k, v in enumerate(self.whites)}
        self.colors = [c for c in b.colors if c != 0]
        self.perms = []
        for c in self.colors:
            self.perms.append([self.widx[b.neighbor(x, c)] for x in self.blacks])

    def zero_score(self, match: Sequence[int]) -> int:
        """``match[k]`` = white index paired with black index ``k``."""
        inv = [0] * len(match)
        for k, w in enumerate(match):
            inv[w] = k
        return sum(count_cycles([inv[s[k]] for k in range(len(match))]) for s in self.perms)


def zero_score_of_covering(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> int:
    fast = _Fast(b)
    om = check_pairing(b, pairing)
    match = [0] * len(fast.blacks)
    for x, y in om:
        match[fast.bidx[x]] = fast.widx[y]
    return fast.zero_score(match)


def forced_pairs(b: ColoredGraph) -> Pairing:
    """Pairs joined by more than D/2 parallel edges; they lie in every optimal pairing."""
    return normalize((x, y) for (x, y), h in parallel_pairs(b).items() if 2 * h > b.D)


def optimal_pairings(b: ColoredGraph, cap: int = DEFAULT_PAIR_CAP) -> tuple[int, list[Pairing]]:
    """Maximum 0-score over coverings and every pairing attaining it (sorted)."""
    _require_bubble(b)
    fast = _Fast(b)
    p = len(fast.blacks)
    forced = forced_pairs(b)
    fixed = {fast.bidx[x]: fast.widx[y] for x, y in forced}
    free_b = [k for k in range(p) if k not in fixed]
    free_w = [k for k in range(p) if k not in set(fixed.values())]
    if len(free_b) > cap:
        raise CapExceeded(f"{len(free_b)} free pairs exceed the cap of {cap}")
    best, winners = -1, []
    match = [0] * p
    for k, w in fixed.items():
        match[k] = w
    for perm in itertools.permutations(free_w):
        for k, w in zip(free_b, perm):
            match[k] = w
        val = fast.zero_score(match)
        if val > best:
            best, winners = val, [tuple(match)]
        elif val == best:
            winners.append(tuple(match))
    pairings = sorted(
        normalize((fast.blacks[k], fast.whites[w]) for k, w in enumerate(m)) for m in winners
    )
    return best, pairings


@dataclass(frozen=True)
class ContractedGraph:
    """Pairs of a pairing as nodes, with one directed edge per bubble edge."""

    pairs: Pairing
    arcs: dict[int, list[int]]  # arcs[c][l] = head of the color-c arc leaving node l

    @property
    def n_nodes(self) -> int:
        return len(self.pairs)

    def color_cycles(self, c: int) -> int:
        return count_cycles(self.arcs[c])

    def lm(self) -> int:
        """Total circuit rank minus the circuit ranks of the color subgraphs."""
        n = self.n_nodes
        all_edges = [(l, h) for perm in self.arcs.values() for l, h in enumerate(perm)]
        total = circuit_rank(n, all_edges)
        mono = sum(circuit_rank(n, list(enumerate(perm))) for perm in self.arcs.values())
        return total - mono


def contracted_graph(g: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> ContractedGraph:
    """Orient edges black to white and contract every pair."""
    om = check_pairing(g, pairing)
    node_of = {}
    for l, (x, y) in enumerate(om):
        node_of[x] = l
        node_of[y] = l
    arcs: dict[int, list[int]] = {c: [0] * len(om) for c in g.colors}
    for x, y, c in g.edges:
        arcs[c][node_of[x]] = node_of[y]
    return ContractedGraph(om, arcs)


def lm(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> int:
    """Polychromatic circuit rank, cross-checked against the covering's 0-score."""
    _require_bubble(b)
    val = contracted_graph(b, pairing).lm()
    expected = 1 + (b.n_vertices // 2) * (b.D - 1) - val
    if b.is_connected() and zero_score(covering(b, pairing)) != expected:
        raise AssertionError("L_m identity failed; graph data is inconsistent")
    return val


def delta0(b: ColoredGraph, pairing: Sequence[tuple[int, int]]) -> int:
    """Order of a covering: D + (D-1)(V/2 - 1) - Phi_0."""
    _require_bubble(b)
    phi0 = zero_score(covering(b, pairing))
    return b.D + (b.D - 1) * (b.n_vertices // 2 - 1) - phi0


@dataclass(frozen=True)
class CoefficientReport:
    D: int
    V: int
    score: int
    phi0_opt: int
    optimal: list[Pairing]
    tilde_a: Fraction
    a: Fraction
    s: Fraction
    delta: Fraction
    evidence: str = "trees-assumed"
    trees_maximal: bool | None = None
    extra: dict = field(default_factory=dict)

    def rows(self) -> list[tuple[str, str]]:
        return [
            ("D", str(self.D)),
            ("V", str(self.V)),
            ("score", str(self.score)),
            ("phi0_opt", str(self.phi0_opt)),
            ("n_optimal", str(len(self.optimal))),
            ("tilde_a", str(self.tilde_a)),
            ("a", str(self.a)),
            ("s", str(self.s)),
            ("Delta", str(self.delta)),
            ("evidence", self.evidence),
            ("trees_maximal", "unknown" if self.trees_maximal is None else str(self.trees_maximal).lower()),
        ]


def report_from_tilde_a(
    b: ColoredGraph, tilde_a: Fraction, phi0_opt: int, optimal: list[Pairing], **kw
) -> CoefficientReport:
    D, V = b.D, b.n_vertices
    phi = score(b)
    tilde_a = Fraction(tilde_a)
    a = (tilde_a + phi) / V
    s = (D - 1) * (Fraction(V, 2) - 1) - tilde_a
    delta = Fraction(D * (D - 1), 4) - a
    return CoefficientReport(D, V, phi, phi0_opt, optimal, tilde_a, a, s, delta, **kw)


def coefficients(b: ColoredGraph, mode: str = "trees-assumed", b_max: int = 2, cap: int = DEFAULT_PAIR_CAP) -> CoefficientReport:
    """Scaling coefficients of a connected bubble.

    ``trees-assumed`` takes the tree value of the tilde-a coefficient; ``enumerated``
    estimates it from exhaustive gluings up to ``b_max`` bubbles.
    """
    _require_bubble(b)
    phi0_opt, optimal = optimal_pairings(b, cap)
    if mode == "trees-assumed":
        rep = report_from_tilde_a(b, Fraction(phi0_opt - b.D), phi0_opt, optimal)
        assert rep.s == lm(b, optimal[0])
        return rep
    if mode == "enumerated":
        from .enumerate import GluingSpec, empirical_tilde_a

        est = empirical_tilde_a(GluingSpec([b], b_max))
        return report_from_tilde_a(
            b,
            est.estimate,
            phi0_opt,
            optimal,
            evidence=f"enumerated-to-{b_max}",
            trees_maximal=est.estimate == phi0_opt - b.D,
        )
    raise ValueError(f"unknown mode {mode!r}")


def coefficients_nonconnected(components: Sequence[CoefficientReport], D: int) -> CoefficientReport:
    """Coefficients of a bubble made of several connected components."""
    if not components:
        raise ValueError("empty component list")
    k = len(components)
    tilde_a = (k - 1) * D + sum(c.tilde_a for c in components)
    V = sum(c.V for c in components)
    a = ((k - 1) * D + sum(c.a * c.V for c in components)) / Fraction(V)
    s = 1 - k + sum(c.s for c in components)
    delta = Fraction(D * (D - 1), 4) - a
    phi = sum(c.score for c in components)
    phi0 = sum(c.phi0_opt for c in components)
    return CoefficientReport(D, V, phi, phi0, [], tilde_a, a, s, delta, evidence="composed")
