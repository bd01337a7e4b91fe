"""Small graph families and seeded random graphs."""

from __future__ import annotations

import itertools
import random

from .graph import Graph, Orientation


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_minus_matching(n: int) -> Graph:
    """``K_n`` without the maximum matching ``{0,1}, {2,3}, ...``."""
    removed = {(2 * i, 2 * i + 1) for i in range(n // 2)}
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if e not in removed])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def octahedron() -> Graph:
    """``K_{2,2,2}``: 4-regular and 4-edge-connected on 6 vertices."""
    return Graph(6, [(u, v) for u, v in itertools.combinations(range(6), 2) if v != u + 3])


def random_gnp(n: int, p: float, seed: int | random.Random = 0) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_bipartite(a: int, b: int, p: float, seed: int | random.Random = 0) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p])


def random_orientation(g: Graph, seed: int | random.Random = 0) -> Orientation:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Orientation(g, tuple(rng.random() < 0.5 for _ in range(g.m)))


KINDS = {
    "complete": (complete, (int,)),
    "complete-minus-matching": (complete_minus_matching, (int,)),
    "cycle": (cycle, (int,)),
    "path": (path, (int,)),
    "random-gnp": (random_gnp, (int, float)),
    "random-bipartite": (random_bipartite, (int, int, float)),
}


def generate(kind: str, params, seed: int = 0) -> Graph:
    if kind not in KINDS:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(KINDS)}")
    fn, types = KINDS[kind]
    if len(params) != len(types):
        raise ValueError(f"{kind} takes {len(types)} parameter(s), got {len(params)}")
    args = [t(x) for t, x in zip(types, params)]
    if kind.startswith("random"):
        return fn(*args, seed=seed)
    return fn(*args)
