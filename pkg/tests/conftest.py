import itertools
import random

import pytest

from gemkit.core import from_permutations
from gemkit.maps import UnionFind


def random_perm(rng: random.Random, p: int) -> list[int]:
    x = list(range(p))
    rng.shuffle(x)
    return x


def random_closed(rng: random.Random, D: int, p: int, marks: bool = False):
    perms = {c: random_perm(rng, p) for c in range(D + 1)}
    marked = [k for k in range(p) if marks and rng.random() < 0.3]
    return from_permutations(D, perms, marked)


def all_bubbles(D: int, p: int):
    """Every labeled connected bubble on 2p vertices with sigma_1 = id."""
    perms = list(itertools.permutations(range(p)))
    for rest in itertools.product(perms, repeat=D - 1):
        sig = {1: list(range(p))}
        sig.update({c + 2: list(s) for c, s in enumerate(rest)})
        uf = UnionFind(2 * p)
        for s in sig.values():
            for k in range(p):
                uf.union(k, p + s[k])
        if uf.components == 1:
            yield from_permutations(D, sig)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261018)
