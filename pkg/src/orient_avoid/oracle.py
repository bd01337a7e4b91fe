"""Exhaustive searches used as ground truth."""

from __future__ import annotations

import itertools
from typing import Sequence

from . import guards
from .graph import ForbiddenSets, Graph, Orientation, to_outdegree

ORIENTATION_GUARD = 26
FLOW_GUARD = 10**7
FRANK_GYARFAS_GUARD = 20


def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a vertex of minimum remaining degree (lowest label on ties)."""
    deg = list(g.degrees)
    alive = [True] * g.n
    order = []
    for _ in range(g.n):
        v = min((v for v in range(g.n) if alive[v]), key=lambda v: (deg[v], v))
        alive[v] = False
        order.append(v)
        for e in g.incident[v]:
            w = g.other(e, v)
            if alive[w]:
                deg[w] -= 1
    return order


def decision_order(g: Graph) -> list[int]:
    """Edges grouped by whichever endpoint is removed later in the degeneracy order.

    When the last edge of a group is decided that vertex's out-degree is final.
    """
    rank = {v: i for i, v in enumerate(degeneracy_order(g))}
    return sorted(range(g.m), key=lambda e: (max(rank[x] for x in g.edges[e]), e))


def find_orientation(g: Graph, f: ForbiddenSets) -> Orientation | None:
    """An F-avoiding orientation of ``g``, or ``None`` if there is none.

    Edges are decided in :func:`decision_order`, trying ``forward`` first.
    A branch is cut when some vertex has every out-degree it can still reach
    forbidden.  The witness is the first solution in that search order.
    """
    guards.check("edge count", g.m, ORIENTATION_GUARD)
    if len(f.sets) != g.n:
        raise ValueError("forbidden sets do not match the graph")
    forb = to_outdegree(f, g).sets
    order = decision_order(g)
    out = [0] * g.n
    left = list(g.degrees)
    bits = [True] * g.m

    def alive(v: int) -> bool:
        lo, hi = out[v], out[v] + left[v]
        if hi - lo + 1 > len(forb[v]):
            return True
        return any(k not in forb[v] for k in range(lo, hi + 1))

    for v in range(g.n):
        if not alive(v):
            return None

    def walk(k: int) -> bool:
        if k == len(order):
            return True
        e = order[k]
        u, v = g.edges[e]
        left[u] -= 1
        left[v] -= 1
        for fwd in (True, False):
            tail = u if fwd else v
            out[tail] += 1
            bits[e] = fwd
            if alive(u) and alive(v) and walk(k + 1):
                return True
            out[tail] -= 1
        left[u] += 1
        left[v] += 1
        return False

    if walk(0):
        return Orientation(g, tuple(bits))
    return None


def all_orientations(g: Graph):
    for bits in itertools.product((True, False), repeat=g.m):
        yield Orientation(g, bits)


def sweep_orientation(g: Graph, f: ForbiddenSets) -> Orientation | None:
    """Unpruned ``2^m`` sweep; the reference for :func:`find_orientation`."""
    from .graph import is_f_avoiding

    for d in all_orientations(g):
        if is_f_avoiding(d, f):
            return d
    return None


def find_b_flow(g: Graph, p: int, b: Sequence[int]) -> list[int] | None:
    """Nowhere-zero ``phi: E -> Z_p`` with net outflow ``b(v)`` at every vertex.

    ``phi[e]`` flows along the reference direction ``edges[e][0] -> edges[e][1]``.
    """
    if p not in (2, 3, 5):
        raise ValueError("p must be a prime no larger than 5")
    if len(b) != g.n:
        raise ValueError("boundary has the wrong length")
    if sum(b) % p:
        raise ValueError("boundary values must sum to 0 mod p")
    guards.check("search space (p-1)^m", (p - 1) ** g.m, FLOW_GUARD)
    order = decision_order(g)
    left = list(g.degrees)
    net = [0] * g.n
    phi = [0] * g.m
    target = [x % p for x in b]

    def walk(k: int) -> bool:
        if k == len(order):
            return True
        e = order[k]
        u, v = g.edges[e]
        left[u] -= 1
        left[v] -= 1
        for val in range(1, p):
            net[u] += val
            net[v] -= val
            phi[e] = val
            ok = all(left[w] or (net[w] - target[w]) % p == 0 for w in (u, v))
            if ok and walk(k + 1):
                return True
            net[u] -= val
            net[v] += val
        left[u] += 1
        left[v] += 1
        return False

    for v in range(g.n):
        if left[v] == 0 and target[v] != 0:
            return None
    if walk(0):
        return list(phi)
    return None


def zero_sum_boundaries(n: int, p: int):
    for head in itertools.product(range(p), repeat=max(n - 1, 0)):
        yield list(head) + [(-sum(head)) % p] if n else []


def frank_gyarfas_check(g: Graph, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether every vertex set U has
    ``sum_U a - e(U, V-U) <= |E(G[U])| <= sum_U b``.

    This holds exactly when some orientation has ``a(v) <= deg^+(v) <= b(v)``.
    """
    guards.check("vertex count", g.n, FRANK_GYARFAS_GUARD)
    if len(a) != g.n or len(b) != g.n:
        raise ValueError("bounds have the wrong length")
    if any(x > y for x, y in zip(a, b)):
        raise ValueError("lower bound exceeds upper bound")
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    for mask in range(1 << g.n):
        inside = 0
        cut = 0
        for em in masks:
            hit = mask & em
            if hit == em:
                inside += 1
            elif hit:
                cut += 1
        lo = hi = 0
        for v in range(g.n):
            if mask >> v & 1:
                lo += a[v]
                hi += b[v]
        if lo - cut > inside or inside > hi:
            return False
    return True


def bounded_orientation_exists(g: Graph, a: Sequence[int], b: Sequence[int]) -> bool:
    """Plain ``2^m`` sweep for an orientation with ``a <= deg^+ <= b``."""
    for d in all_orientations(g):
        if all(a[v] <= d.out_degrees[v] <= b[v] for v in range(g.n)):
            return True
    return False
