import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orient_avoid import generators
from orient_avoid.graph import Graph
from orient_avoid.linalg import matvec
from orient_avoid.rounding import (
    EdgeVertexMatrix,
    MatrixPatternError,
    cycle_relief_vector,
    guarantee_holds,
    round_edge_vector,
    vector_from_json,
    vector_to_json,
)

H = Fraction(1, 2)


def bound_ok(mat, y, z):
    """Independent check of x'_v > x_v - b_v (>= when b_v = 0)."""
    dense = mat.dense()
    x = matvec(dense, y)
    xr = matvec(dense, z)
    for v, row in enumerate(dense):
        b = max((abs(a) for a in row), default=0)
        if b > 0 and not xr[v] > x[v] - b:
            return False
        if b == 0 and xr[v] < x[v]:
            return False
    return True


def test_integral_input_unchanged():
    g = generators.cycle(4)
    mat = EdgeVertexMatrix.ordered(g, range(4), 1, -2)
    y = [1, 0, 0, 1]
    assert round_edge_vector(mat, y) == (1, 0, 0, 1)


def test_single_edge_both_roundings_valid():
    g = Graph(2, [(0, 1)])
    mat = EdgeVertexMatrix.from_entries(g, [(0, 0, 1), (1, 0, -2)])
    for z in ([0], [1]):
        assert bound_ok(mat, [H], z)
    z = round_edge_vector(mat, [H])
    assert z in ((0,), (1,))


def test_triangle_half():
    g = generators.cycle(3)
    mat = EdgeVertexMatrix.ordered(g, range(3), 1, -2)
    y = [H] * 3
    good = [z for z in itertools.product((0, 1), repeat=3) if bound_ok(mat, y, z)]
    assert good
    z = round_edge_vector(mat, y)
    assert z in good
    assert all(guarantee_holds(mat, y, z))


def test_cycle_relief_triangle():
    sub = [[1, 0, -2], [-2, 1, 0], [0, -2, 1]]
    a = cycle_relief_vector(sub, pivot_row=0)
    prod = matvec(sub, a)
    assert prod == [1, 0, 0]
    assert all(p >= 0 for p in matvec(sub, [2 * t for t in a]))


def test_cycle_relief_singular_gives_kernel():
    sub = [[1, -1], [-1, 1]]
    a = cycle_relief_vector(sub)
    assert any(a) and matvec(sub, a) == [0, 0]


def test_cycle_relief_rejects_bad_pattern():
    with pytest.raises(MatrixPatternError):
        cycle_relief_vector([[1, 1, 1], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(MatrixPatternError):
        cycle_relief_vector([[1, 0, 0], [0, 1, 0]])


def test_from_dense_rejects_offpattern():
    g = Graph(3, [(0, 1)])
    with pytest.raises(MatrixPatternError):
        EdgeVertexMatrix.from_dense(g, [[1], [1], [1]])


def test_matrix_json_round_trip():
    g = generators.complete(4)
    mat = EdgeVertexMatrix.ordered(g, (3, 1, 0, 2), Fraction(1, 3), Fraction(-5, 7))
    back = EdgeVertexMatrix.from_json(g, mat.to_json())
    assert back.dense() == mat.dense()
    y = [Fraction(1, 3), Fraction(2, 7), 0, 1, Fraction(1, 2), Fraction(5, 9)]
    assert vector_from_json(vector_to_json(y)) == y


def test_rejects_out_of_box():
    g = Graph(2, [(0, 1)])
    mat = EdgeVertexMatrix.from_entries(g, [(0, 0, 1), (1, 0, 1)])
    with pytest.raises(ValueError):
        round_edge_vector(mat, [Fraction(3, 2)])


def random_instance(rng, n, p):
    g = generators.random_gnp(n, p, rng)
    cols = []
    for _ in range(g.m):
        cols.append(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(2)))
    y = [Fraction(rng.randint(0, 8), 8) for _ in range(g.m)]
    return EdgeVertexMatrix(g, tuple(cols)), y


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.floats(0.2, 1.0), st.randoms(use_true_random=False))
def test_rounding_property(n, p, rng):
    mat, y = random_instance(rng, n, p)
    z = round_edge_vector(mat, y)
    assert all(t in (0, 1) for t in z)
    for e, ye in enumerate(y):
        if ye in (0, 1):
            assert z[e] == ye
    assert bound_ok(mat, y, z)


def test_rounding_frozen_seed():
    rng = random.Random(2024)
    mat, y = random_instance(rng, 7, 0.7)
    assert round_edge_vector(mat, y) == round_edge_vector(mat, y)
