"""Orderings and subgraphs certifying that an F-avoiding orientation exists.

A pair (ordering, H) certifies the forbidden sets F when every vertex has

    slack(v) = degL_G(v) - 2 degL_H(v) + degR_H(v) - |F(v)| >= 0.

The builders below produce such pairs for three regimes: lists of size up to
``floor(deg/3) - 1``, up to ``(2/3) deg_D^+ - 1`` for a given orientation
``D``, and up to ``(sqrt2 - 1 - 2 gamma) deg`` by random sampling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    ForbiddenSets,
    Graph,
    Orientation,
    Subgraph,
    VertexOrdering,
    left_right_degrees,
)
from .rounding import EdgeVertexMatrix, round_edge_vector


@dataclass(frozen=True)
class HCertificate:
    ordering: VertexOrdering
    h: Subgraph
    slack: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return all(s >= 0 for s in self.slack)

    def to_json(self) -> dict:
        return {
            "ordering": list(self.ordering.order),
            "h_edges": [list(e) for e in self.h.edges()],
            "slack": list(self.slack),
            "valid": self.valid,
        }

    @classmethod
    def from_json(cls, g: Graph, data: dict, f: ForbiddenSets | None = None) -> HCertificate:
        """Rebuild from JSON, recomputing the slack rather than trusting it."""
        ordering = VertexOrdering(tuple(data["ordering"]))
        h = Subgraph.from_edges(g, data["h_edges"])
        if f is None:
            f = ForbiddenSets.empty(g)
        return certify_h_condition(g, ordering, h, f)


def weights(g: Graph, ordering: VertexOrdering, h: Subgraph) -> list[int]:
    """``degL_G(v) - 2 degL_H(v) + degR_H(v)`` for every vertex."""
    gl, _ = left_right_degrees(g, ordering)
    hl, hr = left_right_degrees(g, ordering, h)
    return [gl[v] - 2 * hl[v] + hr[v] for v in range(g.n)]


def certify_h_condition(
    g: Graph, ordering: VertexOrdering, h: Subgraph, f: ForbiddenSets
) -> HCertificate:
    if len(f.sets) != g.n:
        raise ValueError(f"{len(f.sets)} forbidden sets for {g.n} vertices")
    w = weights(g, ordering, h)
    slack = tuple(w[v] - len(f.sets[v]) for v in range(g.n))
    return HCertificate(ordering, h, slack)


def third_matrix(g: Graph, ordering: VertexOrdering) -> EdgeVertexMatrix:
    """1 at the earlier endpoint of each edge, -2 at the later one."""
    ordering.check(g)
    return EdgeVertexMatrix.ordered(g, ordering.position, 1, -2)


def build_h_third(g: Graph, ordering: VertexOrdering | None = None):
    """(ordering, H) with weight at least ``floor(deg(v)/3) - 1`` everywhere.

    That bound is negative when ``deg(v) < 3``.  Edges joining two such
    vertices start at 0 instead of 1/3, so these vertices never gain a left
    H-edge from each other; the default ordering puts them first (otherwise
    input order), which then keeps their weight nonnegative.  Rows of the
    other vertices are untouched.
    """
    low = [d < 3 for d in g.degrees]
    if ordering is None:
        ordering = VertexOrdering(
            tuple(v for v in range(g.n) if low[v]) + tuple(v for v in range(g.n) if not low[v])
        )
    mat = third_matrix(g, ordering)
    y = [Fraction(0) if low[u] and low[v] else Fraction(1, 3) for u, v in g.edges]
    rounded = round_edge_vector(mat, y)
    return ordering, Subgraph(g, tuple(bool(b) for b in rounded))


def third_guarantee(g: Graph) -> list[int]:
    return [d // 3 - 1 for d in g.degrees]


def third_list_sizes(g: Graph) -> list[int]:
    """List sizes certified by the default ``build_h_third``."""
    return [max(0, s) for s in third_guarantee(g)]


def forward_edges(d: Orientation, ordering: VertexOrdering) -> list[bool]:
    pos = ordering.position
    return [pos[d.tail(e)] < pos[d.head(e)] for e in range(d.graph.m)]


def left_in_out(d: Orientation, ordering: VertexOrdering) -> tuple[list[int], list[int]]:
    """Per vertex: (backward arcs leaving it, forward arcs entering it).

    Both kinds of arc join the vertex to a neighbour on its left.
    """
    pos = ordering.position
    out_left = [0] * d.graph.n
    in_left = [0] * d.graph.n
    for e in range(d.graph.m):
        t, h = d.tail(e), d.head(e)
        if pos[t] < pos[h]:
            in_left[h] += 1
        else:
            out_left[t] += 1
    return out_left, in_left


def minimize_forward_edges(
    g: Graph, d: Orientation, start: VertexOrdering | None = None
) -> VertexOrdering:
    """Local search until every vertex has at least as many backward arcs
    out to its left as forward arcs in from its left.

    Moving a violating vertex to the front cuts the forward-arc count by the
    size of the violation, so the loop runs at most ``m`` times.
    """
    if d.graph != g:
        raise ValueError("orientation is of a different graph")
    order = list(start.order if start is not None else range(g.n))
    moves = 0
    while True:
        ordering = VertexOrdering(tuple(order))
        out_left, in_left = left_in_out(d, ordering)
        bad = next((v for v in order if out_left[v] < in_left[v]), None)
        if bad is None:
            return ordering
        order.remove(bad)
        order.insert(0, bad)
        moves += 1
        assert moves <= g.m, "forward-edge local search failed to terminate"


def build_h_two_thirds(g: Graph, d: Orientation):
    """(ordering, H) with weight at least ``floor(2 deg_D^+(v) / 3) - 1``."""
    ordering = minimize_forward_edges(g, d)
    mat = third_matrix(g, ordering)
    fwd = forward_edges(d, ordering)
    y = [Fraction(2, 3) if f else Fraction(0) for f in fwd]
    rounded = round_edge_vector(mat, y)
    return ordering, Subgraph(g, tuple(bool(b) for b in rounded))


def two_thirds_guarantee(d: Orientation) -> list[int]:
    return [(2 * k) // 3 - 1 for k in d.out_degrees]


# -- random construction -----------------------------------------------------
#
# alpha = sqrt(2) - 1 is irrational; every comparison against it below is
# rewritten as a comparison of squares of nonnegative rationals, so the
# sampler and the acceptance test are exact.

ALPHA = math.sqrt(2) - 1
_BITS = 64
_SCALE = 1 << _BITS


def _below_alpha(x: Fraction) -> bool:
    """``x <= sqrt2 - 1``."""
    return (x + 1) ** 2 <= 2


def _in_region(x: Fraction, y: Fraction) -> bool:
    """``0 <= x <= alpha`` and ``alpha + sqrt2 * x <= y <= 1``.

    ``(1 - alpha) / alpha`` equals ``sqrt2``, so the lower bound on ``y`` is
    ``y + 1 >= sqrt2 (x + 1)``.
    """
    return 0 <= x and _below_alpha(x) and y <= 1 and (y + 1) ** 2 >= 2 * (x + 1) ** 2


def _coin_keep(u: Fraction) -> bool:
    """``u < alpha / (1 - alpha) = 1/sqrt2`` for ``u`` in [0, 1)."""
    return 2 * u * u < 1


def beats_threshold(slack: int, degree: int, gamma: Fraction) -> bool:
    """``(alpha - 2 gamma) * degree < slack``, decided exactly.

    Equivalent to ``sqrt2 * degree < slack + (1 + 2 gamma) * degree``.
    """
    rhs = slack + (1 + 2 * gamma) * degree
    if degree == 0:
        return rhs > 0
    return rhs > 0 and 2 * degree * degree < rhs * rhs


@dataclass
class RandomAttempt:
    ordering: VertexOrdering
    h: Subgraph
    weights: list[int]
    passed: list[bool]

    @property
    def failures(self) -> int:
        return sum(1 for p in self.passed if not p)


class ConstructionFailed(RuntimeError):
    """No sampled subgraph met the threshold within the attempt budget."""

    def __init__(self, attempts: int, worst: RandomAttempt | None, gamma: Fraction):
        self.attempts = attempts
        self.worst = worst
        self.gamma = gamma
        nbad = worst.failures if worst is not None else 0
        super().__init__(f"no accepted subgraph in {attempts} attempts (worst: {nbad} vertices short)")

    def diagnostics(self) -> list[dict]:
        if self.worst is None:
            return []
        g = self.worst.h.graph
        return [
            {
                "vertex": v,
                "degree": g.degrees[v],
                "weight": self.worst.weights[v],
                "threshold": float((ALPHA - 2 * float(self.gamma)) * g.degrees[v]),
                "ok": self.worst.passed[v],
            }
            for v in range(g.n)
        ]


def _sample_positions(n: int, rng: random.Random) -> list[Fraction]:
    while True:
        raw = [rng.getrandbits(_BITS) for _ in range(n)]
        if len(set(raw)) == n:
            return [Fraction(r, _SCALE) for r in raw]


def sample_attempt(g: Graph, rng: random.Random, gamma: Fraction) -> RandomAttempt:
    phi = _sample_positions(g.n, rng)
    ordering = VertexOrdering(tuple(sorted(range(g.n), key=lambda v: phi[v])))
    included = []
    for u, v in g.edges:
        x, y = (phi[u], phi[v]) if phi[u] < phi[v] else (phi[v], phi[u])
        coin = Fraction(rng.getrandbits(_BITS), _SCALE)
        included.append(_in_region(x, y) and _coin_keep(coin))
    h = Subgraph(g, tuple(included))
    w = weights(g, ordering, h)
    passed = [
        g.degrees[v] == 0 or beats_threshold(w[v], g.degrees[v], gamma) for v in range(g.n)
    ]
    return RandomAttempt(ordering, h, w, passed)


def build_h_random(g: Graph, gamma, seed: int = 0, max_attempts: int = 200):
    """Sample (ordering, H) until every vertex of positive degree has weight
    strictly above ``(sqrt2 - 1 - 2 gamma) * deg``.

    Vertices are placed at independent uniform points of [0, 1] (64-bit
    dyadic, redrawn on collision) and ordered left to right.  An edge with
    endpoint positions ``x < y`` enters H with probability ``1/sqrt2`` when
    ``x <= alpha`` and ``y >= alpha + sqrt2 * x``, and never otherwise.

    Raises :class:`ConstructionFailed` after ``max_attempts`` rejections.
    """
    gamma = Fraction(gamma)
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie strictly between 0 and 1")
    rng = random.Random(seed)
    worst = None
    for _ in range(max_attempts):
        attempt = sample_attempt(g, rng, gamma)
        if attempt.failures == 0:
            return attempt.ordering, attempt.h
        if worst is None or attempt.failures > worst.failures:
            worst = attempt
    raise ConstructionFailed(max_attempts, worst, gamma)


def random_guarantee(g: Graph, gamma) -> list[int]:
    """List sizes certified by an accepted random attempt.

    An accepted weight is an integer strictly above ``(alpha - 2 gamma) deg``,
    so it is at least the least such nonnegative integer.
    """
    gamma = Fraction(gamma)
    out = []
    for d in g.degrees:
        k = 0
        while d and not beats_threshold(k, d, gamma):
            k += 1
        out.append(k)
    return out


# -- limit of the method on complete graphs -----------------------------------


def complete_graph_beta_limit(n: int) -> Fraction:
    """Largest ``beta`` compatible with the A/B weight-sum bounds on ``K_n``.

    Put the first ``k = floor(beta n)`` vertices in A.  A certificate for
    lists of size ``beta (n - 1)`` needs, for some ``e_AB`` in ``[0, k(n-k)]``,

        k beta (n-1)       <= k(k-1)/2 + e_AB
        (n-k) beta (n-1)   <= (n^2 - n - k^2 - k)/2 - 2 e_AB.

    For each ``k`` the feasible betas form an interval inside
    ``[k/n, (k+1)/n)``; the supremum over all ``k`` is returned.
    """
    best = Fraction(0)
    for k in range(n + 1):
        lo, hi = Fraction(k, n), Fraction(k + 1, n)
        caps = [hi]
        nk = n - k
        # e_AB lower bound from A must not exceed k(n-k)
        if k > 0:
            caps.append(Fraction(k * nk + Fraction(k * (k - 1), 2), k * (n - 1)))
        # e_AB upper bound from B must be >= 0
        if nk > 0:
            caps.append(Fraction(n * n - n - k * k - k, 2) / (nk * (n - 1)))
        # lower bound from A must not exceed upper bound from B
        caps.append(Fraction(n * n - n + k * k - 3 * k, 2) / ((n - 1) * (n + k)))
        top = min(caps)
        if top >= lo:
            best = max(best, top)
    return best
