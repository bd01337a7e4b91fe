"""Permanents, dual polynomial coefficients and Eulerian subgraph counts.

For an ``n x m`` matrix ``A`` and multiplicities ``alpha`` (rows), ``beta``
(columns) with equal sums, the row polynomial

    g  = prod_i (sum_j a_ij y_j) ** alpha_i

and the column polynomial

    g* = prod_j (sum_i a_ij x_i) ** beta_j

satisfy ``prod(beta!) coeff(y^beta, g) = perm(A^{alpha,beta})
= prod(alpha!) coeff(x^alpha, g*)``, where ``A^{alpha,beta}`` repeats row
``i`` ``alpha_i`` times and column ``j`` ``beta_j`` times.  With ``A`` a
signed incidence matrix, ``g*`` is a graph polynomial and its coefficients
are signed counts of Eulerian subgraphs.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Iterator, Sequence

from . import guards, linalg
from .graph import ForbiddenSets, Graph, Orientation, Subgraph, VertexOrdering

PERMANENT_GUARD = 22
NAIVE_GUARD = 12
EULERIAN_GUARD = 26
AT_NUMBER_GUARD = 20


def incidence_matrix(g: Graph, ordering: VertexOrdering | None = None) -> list[list[int]]:
    """Signed incidence of the acyclic orientation pointing left to right.

    Rows are vertices (by label), columns are edges.
    """
    if ordering is None:
        ordering = VertexOrdering.identity(g.n)
    ordering.check(g)
    pos = ordering.position
    a = [[0] * g.m for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        first, second = (u, v) if pos[u] < pos[v] else (v, u)
        a[first][e] = 1
        a[second][e] = -1
    return a


def multiplied_matrix(a: Sequence[Sequence], alpha: Sequence[int], beta: Sequence[int]) -> list[list]:
    n = len(a)
    m = len(a[0]) if n else len(beta)
    if len(alpha) != n or len(beta) != m:
        raise ValueError(f"multiplicities ({len(alpha)}, {len(beta)}) do not fit a {n} x {m} matrix")
    if any(k < 0 for k in alpha) or any(k < 0 for k in beta):
        raise ValueError("multiplicities must be non-negative")
    cols = [j for j in range(m) for _ in range(beta[j])]
    return [[a[i][j] for j in cols] for i in range(n) for _ in range(alpha[i])]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def permanent(a: Sequence[Sequence]):
    """Ryser's formula, visiting column subsets in Gray-code order."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("permanent needs a square matrix")
    if n == 0:
        return 1
    guards.check("permanent size", n, PERMANENT_GUARD)
    if any(all(x == 0 for x in row) for row in a):
        return 0
    cols = [[a[i][j] for i in range(n)] for j in range(n)]
    sums = [0] * n
    in_set = [False] * n
    total = 0
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if in_set[j]:
            for i in range(n):
                sums[i] -= col[i]
            size -= 1
        else:
            for i in range(n):
                sums[i] += col[i]
            size += 1
        in_set[j] = not in_set[j]
        prod = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += prod if size % 2 == 0 else -prod
    return total if n % 2 == 0 else -total


def factorial_product(ks: Sequence[int]) -> int:
    out = 1
    for k in ks:
        out *= math.factorial(k)
    return out


def _exact(value):
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def coeff_via_permanent(a, alpha: Sequence[int], beta: Sequence[int], side: str = "y"):
    """``coeff(y^beta, g)`` (``side="y"``) or ``coeff(x^alpha, g*)`` (``side="x"``)."""
    if sum(alpha) != sum(beta):
        raise ValueError(f"|alpha| = {sum(alpha)} differs from |beta| = {sum(beta)}")
    perm = permanent(multiplied_matrix(a, alpha, beta))
    if side == "y":
        return _exact(Fraction(perm) / factorial_product(beta))
    if side == "x":
        return _exact(Fraction(perm) / factorial_product(alpha))
    raise ValueError("side must be 'x' or 'y'")


def naive_coeff(a, alpha: Sequence[int], beta: Sequence[int], side: str = "y"):
    """Same coefficients as :func:`coeff_via_permanent`, by multiplying out.

    Terms whose exponents already exceed the target are discarded as soon as
    they appear.
    """
    if side == "x":
        a, alpha, beta = transpose(a) if a else [[] for _ in beta], beta, alpha
    elif side != "y":
        raise ValueError("side must be 'x' or 'y'")
    n = len(alpha)
    m = len(beta)
    guards.check("number of factors", sum(alpha), NAIVE_GUARD)
    if sum(alpha) != sum(beta):
        return 0
    target = tuple(beta)
    poly: dict[tuple[int, ...], object] = {(0,) * m: 1}
    for i in range(n):
        terms = [(j, a[i][j]) for j in range(m) if a[i][j] != 0]
        for _ in range(alpha[i]):
            nxt: dict[tuple[int, ...], object] = {}
            for exp, c in poly.items():
                for j, aij in terms:
                    if exp[j] >= target[j]:
                        continue
                    new = exp[:j] + (exp[j] + 1,) + exp[j + 1 :]
                    nxt[new] = nxt.get(new, 0) + c * aij
            poly = {k: v for k, v in nxt.items() if v != 0}
            if not poly:
                return 0
    return _exact(poly.get(target, 0))


# -- Eulerian subgraphs ------------------------------------------------------


def eulerian_diff_arcs(n: int, arcs: Sequence[tuple[int, int]]) -> int:
    """``EE - EO`` over arc subsets with in-degree = out-degree everywhere.

    Arcs may repeat (parallel copies).  Arcs are decided in order of their
    later endpoint, and a branch dies as soon as some vertex can no longer
    rebalance with its undecided arcs.
    """
    guards.check("arc count", len(arcs), EULERIAN_GUARD)
    order = sorted(range(len(arcs)), key=lambda i: (max(arcs[i]), min(arcs[i]), i))
    seq = [arcs[i] for i in order]
    remaining = [0] * n
    for t, h in seq:
        remaining[t] += 1
        remaining[h] += 1
    balance = [0] * n

    def walk(k: int) -> int:
        if k == len(seq):
            return 1
        t, h = seq[k]
        remaining[t] -= 1
        remaining[h] -= 1
        total = 0
        # leave the arc out
        if abs(balance[t]) <= remaining[t] and abs(balance[h]) <= remaining[h]:
            total += walk(k + 1)
        # take the arc
        balance[t] += 1
        balance[h] -= 1
        if abs(balance[t]) <= remaining[t] and abs(balance[h]) <= remaining[h]:
            total -= walk(k + 1)
        balance[t] -= 1
        balance[h] += 1
        remaining[t] += 1
        remaining[h] += 1
        return total

    return walk(0)


def eulerian_diff(d: Orientation) -> int:
    return eulerian_diff_arcs(d.graph.n, d.arcs())


def eulerian_counts_bruteforce(n: int, arcs: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """(EE, EO) by checking all ``2^m`` arc subsets; for cross-checks."""
    even = odd = 0
    for mask in range(1 << len(arcs)):
        bal = [0] * n
        size = 0
        for i, (t, h) in enumerate(arcs):
            if mask >> i & 1:
                bal[t] += 1
                bal[h] -= 1
                size += 1
        if not any(bal):
            if size % 2:
                odd += 1
            else:
                even += 1
    return even, odd


def graph_polynomial_coeff(d: Orientation):
    """Coefficient of ``prod_v x_v^{deg_D^+(v)}`` in ``prod_{(u,v)} (x_u - x_v)``."""
    g = d.graph
    return coeff_via_permanent(incidence_matrix(g), d.out_degrees, [1] * g.m, side="x")


def at_condition_check(g: Graph, h: Subgraph, d: Orientation, f: ForbiddenSets) -> bool:
    """Whether ``d`` (an orientation of ``h``) is an Alon-Tarsi orientation
    with ``|F(v)| <= deg_D^+(v)`` everywhere.

    True certifies that ``g`` has an F-avoiding orientation.
    """
    if h.graph != g:
        raise ValueError("subgraph is over a different graph")
    if d.graph != h.to_graph():
        raise ValueError("orientation does not orient the subgraph's edges")
    if len(f.sets) != g.n:
        raise ValueError("forbidden sets do not match the graph")
    if any(len(f.sets[v]) > d.out_degrees[v] for v in range(g.n)):
        return False
    return eulerian_diff(d) != 0


def orientations_bounded(g: Graph, cap: int) -> Iterator[Orientation]:
    """All orientations with every out-degree ``<= cap``, lexicographically
    (edge 0 first, ``forward`` before ``backward``)."""
    out = [0] * g.n
    bits = [True] * g.m

    def walk(e: int):
        if e == g.m:
            yield Orientation(g, tuple(bits))
            return
        u, v = g.edges[e]
        for fwd in (True, False):
            tail = u if fwd else v
            if out[tail] >= cap:
                continue
            out[tail] += 1
            bits[e] = fwd
            yield from walk(e + 1)
            out[tail] -= 1

    yield from walk(0)


def at_number(g: Graph) -> int:
    """Least ``k`` admitting an Alon-Tarsi orientation with out-degrees < k."""
    guards.check("edge count", g.m, AT_NUMBER_GUARD)
    if g.m == 0:
        return 1
    k = -(-g.m // g.n) + 1
    while True:
        for d in orientations_bounded(g, k - 1):
            if eulerian_diff(d) != 0:
                return k
        k += 1


# -- Z_p-connectivity ---------------------------------------------------------


def zp_certificate(g: Graph, p: int, arcs: Sequence[tuple[int, int]], u: int) -> bool:
    """Check the Eulerian-count certificate that ``g`` is Z_p-connected.

    ``arcs`` orients a multiset H of edges of ``g``, each used at most
    ``p - 2`` times.  Accepted iff ``|H| = (p-1)(n-1)``, every vertex other
    than ``u`` has out-degree ``p - 1``, and ``EE - EO`` is nonzero mod p.
    """
    if p not in (3, 5, 7):
        raise ValueError("p must be 3, 5 or 7")
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range")
    mult: Counter = Counter()
    for t, h in arcs:
        if not g.has_edge(t, h):
            raise ValueError(f"({t}, {h}) is not an edge of the graph")
        mult[g.edge_index(t, h)] += 1
    if any(c > p - 2 for c in mult.values()):
        raise ValueError(f"an edge is used more than p - 2 = {p - 2} times")
    if len(arcs) != (p - 1) * (g.n - 1):
        return False
    out = [0] * g.n
    for t, _ in arcs:
        out[t] += 1
    if any(out[v] != p - 1 for v in range(g.n) if v != u):
        return False
    return eulerian_diff_arcs(g.n, list(arcs)) % p != 0


def zp_flow_coefficient(g: Graph, p: int, beta: Sequence[int], u: int) -> int:
    """``coeff(y^beta, g)`` mod p for ``g = prod_{v != u} (sum_e m_ve y_e)^(p-1)``."""
    alpha = [0 if v == u else p - 1 for v in range(g.n)]
    return coeff_via_permanent(incidence_matrix(g), alpha, beta, side="y") % p


def zp_candidates(g: Graph, p: int, u: int) -> Iterator[list[tuple[int, int]]]:
    """Every oriented multiset the certificate could accept on degree grounds.

    Yields arc lists of size ``(p-1)(n-1)`` with copies per edge at most
    ``p - 2``, out-degree ``p - 1`` away from ``u`` and 0 at ``u``.
    """
    target = [0 if v == u else p - 1 for v in range(g.n)]
    out = [0] * g.n
    room = [0] * g.n  # undecided copies still able to add out-degree at v
    for a, b in g.edges:
        room[a] += p - 2
        room[b] += p - 2
    arcs: list[tuple[int, int]] = []

    def walk(e: int):
        if e == g.m:
            if out == target:
                yield list(arcs)
            return
        a, b = g.edges[e]
        room[a] -= p - 2
        room[b] -= p - 2
        for ka in range(p - 1):
            for kb in range(p - 1 - ka):
                out[a] += ka
                out[b] += kb
                if all(out[w] <= target[w] <= out[w] + room[w] for w in (a, b)):
                    arcs.extend([(a, b)] * ka + [(b, a)] * kb)
                    yield from walk(e + 1)
                    del arcs[len(arcs) - ka - kb :]
                out[a] -= ka
                out[b] -= kb
        room[a] += p - 2
        room[b] += p - 2

    yield from walk(0)


# -- set-inclusion matrices ----------------------------------------------------


def inclusion_matrix(ground: int, d: int, b: int) -> list[list[int]]:
    """Rows: ``b``-subsets of ``{1..ground}``; columns: ``d``-subsets; 1 on inclusion."""
    if not 0 <= d <= b <= ground:
        raise ValueError("need 0 <= d <= b <= ground")
    items = range(1, ground + 1)
    rows = [frozenset(c) for c in itertools.combinations(items, b)]
    cols = [frozenset(c) for c in itertools.combinations(items, d)]
    return [[1 if c <= r else 0 for c in cols] for r in rows]


def rational_rank(a: Sequence[Sequence]) -> int:
    return linalg.rank(a)
