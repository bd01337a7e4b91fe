import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orient_avoid import generators, oracle
from orient_avoid.algebra import (
    at_condition_check,
    at_number,
    coeff_via_permanent,
    eulerian_counts_bruteforce,
    eulerian_diff,
    eulerian_diff_arcs,
    incidence_matrix,
    inclusion_matrix,
    multiplied_matrix,
    naive_coeff,
    permanent,
    rational_rank,
    transpose,
    zp_candidates,
    zp_certificate,
)
from orient_avoid.graph import ForbiddenSets, Graph, Orientation, Subgraph, VertexOrdering
from orient_avoid.guards import GuardExceeded


def perm_by_permutations(a):
    n = len(a)
    return sum(math.prod(a[i][s[i]] for i in range(n)) for s in itertools.permutations(range(n)))


def sympy_coeff(a, alpha, beta, side):
    n, m = len(a), len(a[0]) if a else 0
    xs = sympy.symbols(f"x0:{n}") if n else ()
    ys = sympy.symbols(f"y0:{m}") if m else ()
    if side == "y":
        g = sympy.Mul(*[sum(a[i][j] * ys[j] for j in range(m)) ** alpha[i] for i in range(n)])
        mono = sympy.Mul(*[ys[j] ** beta[j] for j in range(m)])
        gens = ys
    else:
        g = sympy.Mul(*[sum(a[i][j] * xs[i] for i in range(n)) ** beta[j] for j in range(m)])
        mono = sympy.Mul(*[xs[i] ** alpha[i] for i in range(n)])
        gens = xs
    poly = sympy.Poly(sympy.expand(g), *gens)
    return poly.coeff_monomial(mono)


def test_incidence_single_edge():
    g = Graph(2, [(0, 1)])
    assert incidence_matrix(g) == [[1], [-1]]
    assert incidence_matrix(g, VertexOrdering((1, 0))) == [[-1], [1]]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.floats(0.2, 1.0), st.randoms(use_true_random=False))
def test_incidence_columns(n, p, rng):
    g = generators.random_gnp(n, p, rng)
    m = incidence_matrix(g)
    for e in range(g.m):
        col = [m[v][e] for v in range(n)]
        assert sum(1 for c in col if c) == 2 and sum(col) == 0


def test_incidence_c3_rank():
    m = incidence_matrix(generators.cycle(3))
    assert rational_rank(m) == 2
    assert sympy.Matrix(m).rank() == 2


def test_multiplied_matrix():
    a = [[1, 2], [3, 4]]
    assert multiplied_matrix(a, [1, 1], [1, 1]) == a
    assert multiplied_matrix([[5, 7]], [2], [1, 1]) == [[5, 7], [5, 7]]
    b = [[1, -2, 0], [3, 4, 5]]
    alpha, beta = [2, 1], [0, 1, 2]
    assert transpose(multiplied_matrix(b, alpha, beta)) == multiplied_matrix(transpose(b), beta, alpha)


def test_permanent_examples():
    assert permanent([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert permanent([[1] * 3] * 3) == 6
    assert permanent([[1, 2], [3, 4]]) == 10
    assert permanent([]) == 1
    assert permanent([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == Fraction(7, 6)
    with pytest.raises(ValueError):
        permanent([[1, 2]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_permanent_matches_permutation_sum(a):
    assert permanent(a) == perm_by_permutations(a)


def test_empty_monomial():
    a = [[1, 2], [3, 4]]
    assert coeff_via_permanent(a, [0, 0], [0, 0]) == 1
    assert naive_coeff(a, [0, 0], [0, 0]) == 1


def test_norm_mismatch():
    with pytest.raises(ValueError):
        coeff_via_permanent([[1]], [1], [2])
    assert naive_coeff([[1]], [1], [2]) == 0


def test_single_row_multinomial():
    a = [[2, -1, 3]]
    beta = [2, 1, 1]
    expect = math.factorial(4) // (2 * 1 * 1) * 2 ** 2 * (-1) * 3
    assert naive_coeff(a, [4], beta) == expect
    assert coeff_via_permanent(a, [4], beta) == expect


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_coefficients_match_sympy(data):
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 3))
    a = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n))
    total = data.draw(st.integers(0, 6))
    alpha = data.draw(st.lists(st.integers(0, total), min_size=n, max_size=n).filter(lambda v: sum(v) == total)) \
        if n > 1 else [total]
    beta = data.draw(st.lists(st.integers(0, total), min_size=m, max_size=m).filter(lambda v: sum(v) == total)) \
        if m > 1 else [total]
    for side in ("y", "x"):
        expect = sympy_coeff(a, alpha, beta, side)
        assert naive_coeff(a, alpha, beta, side) == expect
        assert coeff_via_permanent(a, alpha, beta, side) == expect


def test_c4_coefficient_matches_eulerian():
    g = generators.complete_minus_matching(4)
    a = incidence_matrix(g)
    for d in oracle.all_orientations(g):
        if d.out_degrees != (1, 1, 1, 1):
            continue
        c = coeff_via_permanent(transpose(a), [1] * g.m, list(d.out_degrees), side="x")
        assert abs(c) == abs(eulerian_diff(d))


def test_eulerian_examples():
    assert eulerian_diff_arcs(2, [(0, 1)]) == 1
    assert eulerian_diff_arcs(3, [(0, 1), (1, 2), (2, 0)]) == 0
    assert eulerian_counts_bruteforce(3, [(0, 1), (1, 2), (2, 0)]) == (1, 1)
    # two opposite parallel arcs: {}, {both} even
    assert eulerian_diff_arcs(2, [(0, 1), (1, 0)]) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.floats(0.2, 1.0), st.randoms(use_true_random=False))
def test_eulerian_matches_bruteforce(n, p, rng):
    g = generators.random_gnp(n, p, rng)
    d = generators.random_orientation(g, rng)
    ee, eo = eulerian_counts_bruteforce(n, d.arcs())
    assert eulerian_diff(d) == ee - eo


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_bipartite_eo_zero(a, b, rng):
    g = generators.random_bipartite(a, b, 0.6, rng)
    d = generators.random_orientation(g, rng)
    ee, eo = eulerian_counts_bruteforce(g.n, d.arcs())
    assert eo == 0 and eulerian_diff(d) == ee >= 1


def test_at_condition_single_arc():
    g = generators.path(3)
    h = Subgraph.from_edges(g, [(0, 1)])
    d = Orientation.from_arcs(h.to_graph(), [(0, 1)])
    f = ForbiddenSets.build(g, [[0], [], []])
    assert at_condition_check(g, h, d, f)


def test_at_condition_directed_triangle():
    g = generators.cycle(3)
    h = Subgraph.full(g)
    d = Orientation.from_arcs(g, [(0, 1), (1, 2), (2, 0)])
    assert not at_condition_check(g, h, d, ForbiddenSets.build(g, [[1], [], []]))


def test_at_condition_c4_vs_oracle():
    g = generators.cycle(4)
    h = Subgraph.full(g)
    d = Orientation.from_arcs(g, [(0, 1), (1, 2), (2, 3), (3, 0)])
    for f_vals in itertools.product(range(3), repeat=4):
        f = ForbiddenSets.build(g, [[c] for c in f_vals])
        if at_condition_check(g, h, d, f):
            assert oracle.find_orientation(g, f) is not None


def test_at_numbers():
    assert at_number(generators.complete_minus_matching(4)) == 2
    assert at_number(generators.complete_minus_matching(5)) == 3
    assert at_number(Graph(3, [])) == 1
    assert at_number(generators.complete(4)) == 4


def test_at_number_guard(monkeypatch):
    monkeypatch.delenv("ORIENT_AVOID_GUARD_OVERRIDE", raising=False)
    with pytest.raises(GuardExceeded):
        at_number(generators.complete(8))


def test_zp_k4():
    g = generators.complete(4)
    cands = [(u, arcs) for u in range(4) for arcs in zp_candidates(g, 3, u)]
    assert cands
    for u, arcs in cands:
        d = Orientation.from_arcs(g, arcs)
        assert all(d.out_degree(v) == 2 for v in range(4) if v != u)
        accepted = zp_certificate(g, 3, arcs, u)
        assert accepted == (eulerian_diff(d) % 3 != 0)
    # K_4 has no nowhere-zero Z_3 flow for some boundaries, so no certificate may be accepted
    bad = [b for b in oracle.zero_sum_boundaries(4, 3) if oracle.find_b_flow(g, 3, b) is None]
    assert bad
    assert not any(zp_certificate(g, 3, arcs, u) for u, arcs in cands)


def test_zp_shape_checks():
    g = generators.complete(4)
    assert not zp_certificate(g, 3, [(0, 1), (1, 2)], 0)
    arcs = [(1, 0), (1, 2), (2, 0), (2, 3), (3, 0), (3, 1)]
    assert zp_certificate(g, 3, arcs, 0) in (True, False)
    lopsided = [(1, 0), (1, 2), (1, 3), (2, 0), (3, 0), (3, 2)]
    assert not zp_certificate(g, 3, lopsided, 0)


def test_inclusion_matrix_ranks():
    a = inclusion_matrix(4, 1, 2)
    assert (len(a), len(a[0])) == (6, 4)
    assert rational_rank(a) == 4 == sympy.Matrix(a).rank()
    ident = inclusion_matrix(5, 2, 2)
    assert rational_rank(ident) == 10
    assert all(sum(row) == 1 for row in ident)
    with pytest.raises(ValueError):
        inclusion_matrix(5, 3, 2)
    b = inclusion_matrix(5, 2, 3)
    assert rational_rank(b) == 10 == sympy.Matrix(b).rank()


@pytest.mark.parametrize("ground,d,b", [(6, 2, 3), (6, 1, 4), (6, 0, 2), (7, 2, 4)])
def test_inclusion_rank_vs_sympy(ground, d, b):
    a = inclusion_matrix(ground, d, b)
    assert rational_rank(a) == sympy.Matrix(a).rank()
