"""Rounding a fractional edge weighting to a 0/1 one.

Given ``M`` with ``m[v][e] != 0`` only at endpoints of ``e`` and ``y`` in
``[0, 1]^E``, :func:`round_edge_vector` returns ``y'`` in ``{0, 1}^E`` with
``(M y')_v >= (M y)_v - b_v`` where ``b_v = max_e |m[v][e]|``, strictly
whenever ``b_v > 0``.

The procedure keeps a vector ``z`` with ``M z >= M y``.  While the edges with
fractional ``z`` contain a cycle it moves ``z`` along a direction supported on
that cycle that does not decrease ``M z`` until some coordinate reaches 0 or
1.  Once the fractional edges form a forest it fixes pendant edges one by
one, always in the direction that does not hurt the inner endpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .graph import Graph


class MatrixPatternError(ValueError):
    """A matrix entry is nonzero at a vertex that is not an endpoint of the edge."""


@dataclass(frozen=True)
class EdgeVertexMatrix:
    """Vertex-by-edge matrix supported on incidences.

    Column ``e`` is stored as the pair ``columns[e] = (m[u][e], m[v][e])`` for
    ``graph.edges[e] = (u, v)``; every other entry is zero by construction.
    """

    graph: Graph
    columns: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        cols = tuple((Fraction(a), Fraction(b)) for a, b in self.columns)
        if len(cols) != self.graph.m:
            raise ValueError(f"{len(cols)} columns for {self.graph.m} edges")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_dense(cls, g: Graph, dense: Sequence[Sequence]) -> EdgeVertexMatrix:
        if len(dense) != g.n or any(len(row) != g.m for row in dense):
            raise ValueError("dense matrix must be n x m")
        cols = []
        for e, (u, v) in enumerate(g.edges):
            for w in range(g.n):
                if w not in (u, v) and dense[w][e] != 0:
                    raise MatrixPatternError(
                        f"entry ({w}, {e}) is nonzero but {w} is not an endpoint of {g.edges[e]}"
                    )
            cols.append((dense[u][e], dense[v][e]))
        return cls(g, tuple(cols))

    @classmethod
    def from_entries(cls, g: Graph, entries) -> EdgeVertexMatrix:
        """Build from ``(v, e, value)`` triples; unlisted entries are zero."""
        dense = [[Fraction(0)] * g.m for _ in range(g.n)]
        for v, e, val in entries:
            v, e = int(v), int(e)
            if not (0 <= v < g.n and 0 <= e < g.m):
                raise ValueError(f"entry ({v}, {e}) outside a {g.n} x {g.m} matrix")
            dense[v][e] = Fraction(val)
        return cls.from_dense(g, dense)

    @classmethod
    def ordered(cls, g: Graph, position: Sequence[int], early, late) -> EdgeVertexMatrix:
        """Column of edge ``{u, v}`` holds ``early`` at whichever endpoint comes first."""
        cols = []
        for u, v in g.edges:
            cols.append((early, late) if position[u] < position[v] else (late, early))
        return cls(g, tuple(cols))

    def entry(self, v: int, e: int) -> Fraction:
        u, w = self.graph.edges[e]
        if v == u:
            return self.columns[e][0]
        if v == w:
            return self.columns[e][1]
        return Fraction(0)

    def dense(self) -> list[list[Fraction]]:
        return [[self.entry(v, e) for e in range(self.graph.m)] for v in range(self.graph.n)]

    @cached_property
    def row_bounds(self) -> tuple[Fraction, ...]:
        """``b_v``: the largest absolute entry in row ``v``."""
        b = [Fraction(0)] * self.graph.n
        for (u, v), (mu, mv) in zip(self.graph.edges, self.columns):
            b[u] = max(b[u], abs(mu))
            b[v] = max(b[v], abs(mv))
        return tuple(b)

    def apply(self, y: Sequence) -> list[Fraction]:
        x = [Fraction(0)] * self.graph.n
        for (u, v), (mu, mv), ye in zip(self.graph.edges, self.columns, y):
            if ye:
                x[u] += mu * ye
                x[v] += mv * ye
        return x

    def to_json(self) -> dict:
        entries = []
        for e, ((u, v), (mu, mv)) in enumerate(zip(self.graph.edges, self.columns)):
            if mu:
                entries.append([u, e, str(mu)])
            if mv:
                entries.append([v, e, str(mv)])
        return {"rows": self.graph.n, "cols": self.graph.m, "entries": entries}

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> EdgeVertexMatrix:
        if data["rows"] != g.n or data["cols"] != g.m:
            raise ValueError("matrix dimensions do not match the graph")
        return cls.from_entries(g, data["entries"])


def vector_to_json(y: Sequence) -> list[str]:
    return [str(Fraction(v)) for v in y]


def vector_from_json(data: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in data]


def cycle_relief_vector(sub: Sequence[Sequence], pivot_row: int = 0) -> list[Fraction]:
    """Nonzero ``a`` with ``sub @ a >= 0`` for the square submatrix of a cycle.

    Rows are the cycle's vertices and columns its edges.  A singular ``sub``
    yields a nullspace vector; otherwise ``a`` solves ``sub @ a = e_pivot``.
    """
    k = len(sub)
    if k == 0 or any(len(row) != k for row in sub):
        raise MatrixPatternError("cycle submatrix must be square and non-empty")
    for c in range(k):
        if sum(1 for r in range(k) if sub[r][c] != 0) > 2:
            raise MatrixPatternError(f"column {c} has more than two nonzero entries")
    for r in range(k):
        if sum(1 for c in range(k) if sub[r][c] != 0) > 2:
            raise MatrixPatternError(f"row {r} has more than two nonzero entries")
    kernel = linalg.nullspace(sub)
    if kernel:
        return kernel[0]
    rhs = [Fraction(0)] * k
    rhs[pivot_row] = Fraction(1)
    return linalg.solve(sub, rhs)


def _find_cycle(g: Graph, support: list[int]) -> tuple[list[int], list[int]] | None:
    """Fundamental cycle closed by the first support edge that joins two
    vertices already connected by earlier support edges.

    Returns ``(vertices, edges)`` or ``None`` when the support is a forest.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_adj: dict[int, list[tuple[int, int]]] = {}
    for e in support:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree_adj.setdefault(u, []).append((v, e))
            tree_adj.setdefault(v, []).append((u, e))
            continue
        # path from u to v inside the forest
        prev: dict[int, tuple[int, int] | None] = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y, ey in tree_adj.get(x, ()):
                if y not in prev:
                    prev[y] = (x, ey)
                    stack.append(y)
        verts = [v]
        edges = [e]
        x = v
        while prev[x] is not None:
            x, ex = prev[x]
            edges.append(ex)
            verts.append(x)
        return verts, edges
    return None


def _fractional(z: Sequence[Fraction]) -> list[int]:
    return [e for e, t in enumerate(z) if 0 < t < 1]


def round_edge_vector(mat: EdgeVertexMatrix, y: Sequence) -> tuple[int, ...]:
    """Round ``y`` to a 0/1 vector losing less than ``b_v`` at each ``(M y)_v``."""
    g = mat.graph
    z = [Fraction(t) for t in y]
    if len(z) != g.m:
        raise ValueError(f"vector has {len(z)} entries, graph has {g.m} edges")
    if any(t < 0 or t > 1 for t in z):
        raise ValueError("edge weights must lie in [0, 1]")

    support = _fractional(z)
    while True:
        found = _find_cycle(g, support)
        if found is None:
            break
        verts, cyc_edges = found
        rows = sorted(verts)
        sub = [[mat.entry(v, e) for e in cyc_edges] for v in rows]
        step_dir = cycle_relief_vector(sub, pivot_row=0)
        p = None
        for e, a in zip(cyc_edges, step_dir):
            if a > 0:
                bound = (1 - z[e]) / a
            elif a < 0:
                bound = z[e] / -a
            else:
                continue
            if p is None or bound < p:
                p = bound
        if p is None:
            raise ArithmeticError("cycle direction is zero on every cycle edge")
        for e, a in zip(cyc_edges, step_dir):
            z[e] += p * a
        new_support = _fractional(z)
        assert len(new_support) < len(support), "fractional support did not shrink"
        support = new_support

    live = set(support)
    frac_deg = [0] * g.n
    for e in live:
        u, v = g.edges[e]
        frac_deg[u] += 1
        frac_deg[v] += 1
    while live:
        leaf = min(v for v in range(g.n) if frac_deg[v] == 1)
        e = next(e for e in g.incident[leaf] if e in live)
        inner = g.other(e, leaf)
        z[e] = Fraction(1) if mat.entry(inner, e) > 0 else Fraction(0)
        live.discard(e)
        frac_deg[leaf] -= 1
        frac_deg[inner] -= 1

    return tuple(int(t) for t in z)


def guarantee_holds(mat: EdgeVertexMatrix, y: Sequence, rounded: Sequence) -> list[bool]:
    """Per-vertex check of the rounding guarantee (strict where ``b_v > 0``)."""
    x = mat.apply(y)
    xr = mat.apply(rounded)
    ok = []
    for v in range(mat.graph.n):
        b = mat.row_bounds[v]
        ok.append(xr[v] > x[v] - b if b > 0 else xr[v] >= x[v])
    return ok


def load_matrix(g: Graph, path: str) -> EdgeVertexMatrix:
    with open(path) as fh:
        return EdgeVertexMatrix.from_json(g, json.load(fh))
