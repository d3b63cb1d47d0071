import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thetasat import EmptyGraph, EmptyWeight, Graph, MultiGraph, min_degree_core, scale_parameters, weighted_core
from thetasat.exact import Alg
from thetasat.pruning import scale_index, weighted_core_ok


def core_bound_holds(core: MultiGraph, n: int, e: int, b: int) -> bool:
    vp = core.n
    if vp == 0:
        return False
    rhs = Alg.power(2, -b) * Alg.power(Fraction(vp, n), Fraction(1, b)) * Alg.of(Fraction(e, vp))
    return Alg.of(core.min_degree()) >= rhs


def random_multigraph(rng, n, m, loops=True):
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = u if loops and rng.random() < 0.1 else rng.randrange(n)
        edges.append((u, v))
    return MultiGraph.from_edges(range(n), edges)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 40))
    m = draw(st.integers(1, 120))
    seed = draw(st.integers(0, 2 ** 32))
    return random_multigraph(random.Random(seed), n, m)


@given(multigraphs(), st.integers(1, 4))
def test_core_meets_bound(g, b):
    core = min_degree_core(g, b)
    assert core.vertices <= g.vertices
    assert set(core.edges) <= set(g.edges)
    assert core == g.induced(core.vertices)
    assert core_bound_holds(core, g.n, g.m, b)


def test_core_of_complete_is_everything():
    g = Graph.complete(10)
    core = min_degree_core(g, 3)
    assert core.n == 10 and core.m == 45


def test_core_star_plus_clique():
    # a K6 with pendant paths: the pendants go, the clique stays
    edges = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    edges += [(5 + i, 6 + i) for i in range(20)]
    g = Graph.from_edges(26, edges)
    res = min_degree_core(g, 2, detail=True)
    assert set(range(6)) <= res.core.vertices
    assert core_bound_holds(res.core, 26, g.m, 2)


def test_core_empty_raises():
    with pytest.raises(EmptyGraph):
        min_degree_core(Graph.from_edges(3, []), 2)


@given(st.lists(st.integers(0, 30), min_size=1, max_size=40), st.integers(2, 4))
def test_weighted_core_property(weights, b):
    B = list(range(len(weights)))
    f = dict(zip(B, weights))
    if sum(weights) == 0:
        with pytest.raises(EmptyWeight):
            weighted_core(B, f, b)
        return
    Bp = weighted_core(B, f, b)
    assert set(Bp) <= set(B) and Bp
    assert weighted_core_ok(Bp, B, f, b)


@given(st.integers(1, 500), st.integers(0, 5000))
def test_scale_index(m, extra):
    n = m + extra
    r = scale_index(m, n)
    # 2^{-r} n <= m < 2^{-r+1} n
    assert n <= m << r < 2 * n


def test_scale_parameters_on_k8():
    sp = scale_parameters(Graph.complete(8), 8, 1, 3)
    assert (sp.m, sp.min_degree, sp.r) == (8, 7, 0)
    assert sp.ell == Alg.of(7) / Alg.power(8, Fraction(1, 3))
    assert sp.check_min_degree_identity()
