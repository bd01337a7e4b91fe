import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orient_avoid import generators
from orient_avoid.graph import ForbiddenSets, Graph, Mode, convert_to_imbalance, is_f_avoiding
from orient_avoid.guards import GuardExceeded
from orient_avoid.oracle import (
    bounded_orientation_exists,
    find_b_flow,
    find_orientation,
    frank_gyarfas_check,
    sweep_orientation,
    zero_sum_boundaries,
)


def brute_b_flow(g, p, b):
    for phi in itertools.product(range(1, p), repeat=g.m):
        net = [0] * g.n
        for (u, v), val in zip(g.edges, phi):
            net[u] += val
            net[v] -= val
        if all((net[v] - b[v]) % p == 0 for v in range(g.n)):
            return True
    return False


def test_k5_sharpness():
    g = generators.complete(5)
    assert find_orientation(g, ForbiddenSets.build(g, [[2, 3]] * 5)) is None
    d = find_orientation(g, ForbiddenSets.build(g, [[2]] * 5))
    assert d is not None and all(k != 2 for k in d.out_degrees)


def test_triangle_singletons():
    g = generators.cycle(3)
    assert find_orientation(g, ForbiddenSets.build(g, [[1]] * 3)) is None
    assert find_orientation(g, ForbiddenSets.build(g, [[0], [1], [1]])) is not None


def test_imbalance_mode():
    g = generators.complete(5)
    f = convert_to_imbalance(ForbiddenSets.build(g, [[2, 3]] * 5), g)
    assert f.mode is Mode.IMBALANCE
    assert find_orientation(g, f) is None
    f = ForbiddenSets.build(g, [[0]] * 5, Mode.IMBALANCE)
    d = find_orientation(g, f)
    assert d is not None and is_f_avoiding(d, f)


@pytest.mark.parametrize("g", [generators.cycle(4), generators.complete(4), generators.octahedron(),
                               generators.complete_bipartite(2, 3), generators.cycle(6)])
def test_two_connected_non_odd_cycle_singletons(g):
    for vals in itertools.islice(itertools.product(*[range(d + 1) for d in g.degrees]), 0, None, 7):
        assert find_orientation(g, ForbiddenSets.build(g, [[c] for c in vals])) is not None


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6), st.floats(0.2, 1.0), st.randoms(use_true_random=False))
def test_search_agrees_with_sweep(n, p, rng):
    g = generators.random_gnp(n, p, rng)
    sets = [rng.sample(range(d + 1), rng.randint(0, d + 1)) for d in g.degrees]
    f = ForbiddenSets.build(g, sets)
    d = find_orientation(g, f)
    ref = sweep_orientation(g, f)
    assert (d is None) == (ref is None)
    if d is not None:
        assert is_f_avoiding(d, f)


def test_orientation_guard(monkeypatch):
    monkeypatch.delenv("ORIENT_AVOID_GUARD_OVERRIDE", raising=False)
    g = generators.complete(9)
    with pytest.raises(GuardExceeded):
        find_orientation(g, ForbiddenSets.empty(g))
    monkeypatch.setenv("ORIENT_AVOID_GUARD_OVERRIDE", "1")
    assert find_orientation(g, ForbiddenSets.empty(g)) is not None


def test_b_flow_examples():
    edge = Graph(2, [(0, 1)])
    assert find_b_flow(edge, 3, [1, -1]) == [1]
    assert find_b_flow(edge, 3, [0, 0]) is None
    # K_4 is cubic and not bipartite, so it has no nowhere-zero 3-flow
    assert find_b_flow(generators.complete(4), 3, [0] * 4) is None
    assert find_b_flow(generators.complete(5), 3, [0] * 5) is not None
    with pytest.raises(ValueError):
        find_b_flow(edge, 3, [1, 0])
    with pytest.raises(ValueError):
        find_b_flow(edge, 7, [0, 0])


@pytest.mark.parametrize("g", [generators.complete(4), generators.cycle(4), generators.path(4),
                               generators.complete_bipartite(2, 3)])
@pytest.mark.parametrize("p", [2, 3])
def test_b_flow_vs_bruteforce(g, p):
    for b in zero_sum_boundaries(g.n, p):
        phi = find_b_flow(g, p, b)
        assert (phi is not None) == brute_b_flow(g, p, b)
        if phi is not None:
            assert all(1 <= x < p for x in phi)


def test_zero_sum_boundaries():
    bs = list(zero_sum_boundaries(3, 3))
    assert len(bs) == 9 and all(sum(b) % 3 == 0 for b in bs)


def test_frank_gyarfas_examples():
    g = generators.random_gnp(6, 0.5, 2)
    assert frank_gyarfas_check(g, [0] * 6, list(g.degrees))
    c3 = generators.cycle(3)
    assert frank_gyarfas_check(c3, [1] * 3, [1] * 3)
    edge = Graph(2, [(0, 1)])
    assert not frank_gyarfas_check(edge, [1, 1], [1, 1])
    with pytest.raises(ValueError):
        frank_gyarfas_check(edge, [1, 1], [0, 1])


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6), st.floats(0.2, 1.0), st.randoms(use_true_random=False))
def test_frank_gyarfas_property(n, p, rng):
    g = generators.random_gnp(n, p, rng)
    a, b = [], []
    for d in g.degrees:
        lo, hi = sorted((rng.randint(0, d), rng.randint(0, d)))
        a.append(lo)
        b.append(hi)
    assert frank_gyarfas_check(g, a, b) == bounded_orientation_exists(g, a, b)
