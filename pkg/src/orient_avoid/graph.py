"""Graphs, vertex orderings, orientations and forbidden-degree assignments.

Everything here is immutable.  Vertices are ``0..n-1`` and edges keep the
index they were given at construction, so per-edge vectors (orientation bits,
subgraph membership, fractional weights) are plain tuples indexed by edge.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = []
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {{{u}, {v}}}")
            seen.add(key)
            normalized.append((u, v))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident with each vertex, in increasing order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._index[key]

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {(min(u, v), max(u, v)): i for i, (u, v) in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexOrdering:
    """A left-to-right arrangement ``order[0], order[1], ...`` of the vertices."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("ordering is not a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> VertexOrdering:
        return cls(tuple(range(n)))

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    def reversed(self) -> VertexOrdering:
        return VertexOrdering(tuple(reversed(self.order)))

    def __len__(self) -> int:
        return len(self.order)

    def check(self, g: Graph) -> None:
        if len(self.order) != g.n:
            raise ValueError(f"ordering has {len(self.order)} vertices, graph has {g.n}")


@dataclass(frozen=True)
class Orientation:
    """One direction per edge: ``forward[e]`` means ``edges[e][0] -> edges[e][1]``."""

    graph: Graph
    forward: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple(bool(b) for b in self.forward))
        if len(self.forward) != self.graph.m:
            raise ValueError(
                f"orientation has {len(self.forward)} bits, graph has {self.graph.m} edges"
            )

    @classmethod
    def from_arcs(cls, g: Graph, arcs: Iterable[Sequence[int]]) -> Orientation:
        bits: list[bool | None] = [None] * g.m
        for tail, head in arcs:
            e = g.edge_index(tail, head)
            if bits[e] is not None:
                raise ValueError(f"edge {g.edges[e]} oriented twice")
            bits[e] = g.edges[e][0] == tail
        if any(b is None for b in bits):
            missing = [g.edges[i] for i, b in enumerate(bits) if b is None]
            raise ValueError(f"edges without a direction: {missing}")
        return cls(g, tuple(bits))

    def tail(self, e: int) -> int:
        u, v = self.graph.edges[e]
        return u if self.forward[e] else v

    def head(self, e: int) -> int:
        u, v = self.graph.edges[e]
        return v if self.forward[e] else u

    def arcs(self) -> list[tuple[int, int]]:
        return [(self.tail(e), self.head(e)) for e in range(self.graph.m)]

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        out = [0] * self.graph.n
        for e in range(self.graph.m):
            out[self.tail(e)] += 1
        return tuple(out)

    def out_degree(self, v: int) -> int:
        return self.out_degrees[v]

    def in_degree(self, v: int) -> int:
        return self.graph.degrees[v] - self.out_degrees[v]

    def reverse(self) -> Orientation:
        return Orientation(self.graph, tuple(not b for b in self.forward))


@dataclass(frozen=True)
class Subgraph:
    """Spanning subgraph of ``graph`` given by an inclusion bit per edge."""

    graph: Graph
    included: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "included", tuple(bool(b) for b in self.included))
        if len(self.included) != self.graph.m:
            raise ValueError(
                f"subgraph has {len(self.included)} bits, graph has {self.graph.m} edges"
            )

    @classmethod
    def empty(cls, g: Graph) -> Subgraph:
        return cls(g, (False,) * g.m)

    @classmethod
    def full(cls, g: Graph) -> Subgraph:
        return cls(g, (True,) * g.m)

    @classmethod
    def from_edges(cls, g: Graph, edges: Iterable[Sequence[int]]) -> Subgraph:
        bits = [False] * g.m
        for u, v in edges:
            bits[g.edge_index(u, v)] = True
        return cls(g, tuple(bits))

    def edge_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.included) if b]

    def edges(self) -> list[tuple[int, int]]:
        return [self.graph.edges[i] for i in self.edge_indices()]

    def to_graph(self) -> Graph:
        """The subgraph as a standalone :class:`Graph` on the same vertex set."""
        return Graph(self.graph.n, self.edges())

    @property
    def size(self) -> int:
        return sum(self.included)


class Mode(str, enum.Enum):
    OUTDEG = "outdeg"
    IMBALANCE = "imbalance"


@dataclass(frozen=True)
class ForbiddenSets:
    """Per-vertex forbidden out-degrees (or imbalances).

    Build these with :meth:`build`, which drops values that no orientation
    can attain and records how many were dropped.
    """

    mode: Mode
    sets: tuple[frozenset[int], ...]
    dropped: int = field(default=0, compare=False)

    @classmethod
    def build(cls, g: Graph, sets: Sequence[Iterable[int]], mode: Mode | str = Mode.OUTDEG):
        mode = Mode(mode)
        if len(sets) != g.n:
            raise ValueError(f"{len(sets)} forbidden sets for {g.n} vertices")
        kept = []
        dropped = 0
        for v, raw in enumerate(sets):
            d = g.degrees[v]
            good = set()
            for a in raw:
                a = int(a)
                if mode is Mode.OUTDEG:
                    ok = 0 <= a <= d
                else:
                    ok = -d <= a <= d and (a - d) % 2 == 0
                if ok:
                    good.add(a)
                else:
                    dropped += 1
            kept.append(frozenset(good))
        return cls(mode, tuple(kept), dropped)

    @classmethod
    def empty(cls, g: Graph, mode: Mode | str = Mode.OUTDEG) -> ForbiddenSets:
        return cls(Mode(mode), tuple(frozenset() for _ in range(g.n)))

    def sizes(self) -> list[int]:
        return [len(s) for s in self.sets]

    def __len__(self) -> int:
        return len(self.sets)


def left_right_degrees(
    g: Graph, ordering: VertexOrdering, sub: Subgraph | None = None
) -> tuple[list[int], list[int]]:
    """Per-vertex counts of in-scope neighbours to the left and right.

    With ``sub`` given only its edges are counted.
    """
    ordering.check(g)
    if sub is not None and sub.graph != g:
        raise ValueError("subgraph is over a different graph")
    pos = ordering.position
    left = [0] * g.n
    right = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        if sub is not None and not sub.included[i]:
            continue
        if pos[u] < pos[v]:
            right[u] += 1
            left[v] += 1
        else:
            right[v] += 1
            left[u] += 1
    return left, right


def imbalance(d: Orientation, v: int) -> int:
    """Out-degree minus in-degree of ``v`` under ``d``."""
    if not 0 <= v < d.graph.n:
        raise IndexError(f"vertex {v} out of range")
    return 2 * d.out_degrees[v] - d.graph.degrees[v]


def is_f_avoiding(d: Orientation, f: ForbiddenSets) -> bool:
    if len(f.sets) != d.graph.n:
        raise ValueError("forbidden sets do not match the graph")
    for v in range(d.graph.n):
        stat = d.out_degrees[v] if f.mode is Mode.OUTDEG else imbalance(d, v)
        if stat in f.sets[v]:
            return False
    return True


def convert_to_imbalance(f: ForbiddenSets, g: Graph) -> ForbiddenSets:
    if f.mode is not Mode.OUTDEG:
        raise ValueError("expected out-degree mode forbidden sets")
    sets = tuple(frozenset(2 * a - g.degrees[v] for a in s) for v, s in enumerate(f.sets))
    return ForbiddenSets(Mode.IMBALANCE, sets)


def to_outdegree(f: ForbiddenSets, g: Graph) -> ForbiddenSets:
    """Inverse of :func:`convert_to_imbalance`; identity on out-degree sets."""
    if f.mode is Mode.OUTDEG:
        return f
    sets = tuple(frozenset((a + g.degrees[v]) // 2 for a in s) for v, s in enumerate(f.sets))
    return ForbiddenSets(Mode.OUTDEG, sets)


def balanced_orientation(g: Graph) -> Orientation:
    """Orientation with ``|out(v) - in(v)| <= 1`` at every vertex.

    Odd-degree vertices are joined to an auxiliary vertex and each component
    is oriented along an Euler circuit.
    """
    import networkx as nx

    aux = g.n
    mg = nx.MultiGraph()
    mg.add_nodes_from(range(g.n + 1))
    for i, (u, v) in enumerate(g.edges):
        mg.add_edge(u, v, key=i)
    for v in range(g.n):
        if g.degrees[v] % 2:
            mg.add_edge(v, aux, key=-1 - v)
    forward = [True] * g.m
    for comp in nx.connected_components(mg):
        if len(comp) < 2:
            continue
        start = min(comp)
        for u, v, k in nx.eulerian_circuit(mg.subgraph(comp), source=start, keys=True):
            if k >= 0:
                forward[k] = g.edges[k][0] == u
    return Orientation(g, tuple(forward))
