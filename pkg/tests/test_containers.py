import itertools
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thetasat import EmptyHypergraph, UniformHypergraph, build_containers, codegree_delta, gnp_upper_bound, iterate_containers
from thetasat.containers import bound_rows, formula_cap, max_codegrees, record_counts, tau_for
from thetasat.supersat import SupersatConfig, copy_source


@st.composite
def hypergraphs(draw, max_n=10, r=3):
    N = draw(st.integers(r, max_n))
    pool = list(itertools.combinations(range(N), r))
    m = draw(st.integers(1, min(len(pool), 25)))
    seed = draw(st.integers(0, 2 ** 32))
    return UniformHypergraph.random(N, r, m, random.Random(seed))


def test_codegree_of_single_edge():
    h = UniformHypergraph.from_edges(3, 3, [(0, 1, 2)])
    assert codegree_delta(h, 1) == 6
    assert codegree_delta(h, 2) == Fraction(9, 4)


def test_max_codegrees_brute():
    h = UniformHypergraph.from_edges(5, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 4)])
    d = max_codegrees(h)
    # d^(2)(0) = max over pairs through 0 of their codegree
    assert d[2][0] == 2 and d[3][4] == 1


@given(hypergraphs(), st.fractions(min_value=Fraction(1, 8), max_value=8), st.fractions(min_value=Fraction(1, 8), max_value=8))
def test_codegree_delta_decreasing_in_tau(h, t1, t2):
    lo, hi = sorted((t1, t2))
    assert codegree_delta(h, hi) <= codegree_delta(h, lo)


@given(hypergraphs(), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_tau_for_meets_delta(h, delta):
    tau = tau_for(h, delta)
    assert codegree_delta(h, tau) <= delta
    if tau > Fraction(1, 64):
        assert codegree_delta(h, tau - Fraction(1, 64)) > delta


@given(hypergraphs(max_n=11), st.sampled_from([Fraction(1, 4), Fraction(1, 2)]))
def test_containers_cover_independent_sets(h, delta):
    cs = build_containers(h, tau_for(h, delta), delta)
    rep = cs.verify()
    assert rep.exhaustive and rep.ok, rep
    for I in h.independent_sets():
        T = cs.fingerprint(I)
        assert T <= I <= cs.f(T)


def test_empty_hypergraph_single_container():
    h = UniformHypergraph.from_edges(5, 3, [])
    cs = build_containers(h, 1, Fraction(1, 2))
    assert cs.containers == [frozenset(range(5))]
    with pytest.raises(EmptyHypergraph):
        codegree_delta(h, 1)


def test_small_tau_warns():
    h = UniformHypergraph.from_edges(4, 3, [(0, 1, 2), (0, 1, 3)])
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        build_containers(h, Fraction(1, 100), Fraction(1, 2))
    assert any("exceeds" in str(x.message) for x in w)


@given(st.dictionaries(st.integers(0, 6), st.integers(1, 50), min_size=1),
       st.fractions(0, 1), st.fractions(0, 1), st.integers(1, 12), st.integers(12, 30))
def test_union_bound_monotone_in_p(counts, p1, p2, m, K):
    lo, hi = sorted((p1, p2))
    assert gnp_upper_bound(counts, lo, m, K).bound <= gnp_upper_bound(counts, hi, m, K).bound


def test_union_bound_value():
    ub = gnp_upper_bound({0: 1, 1: 2}, Fraction(1, 2), 2, 4)
    # 1 * C(4,2)/4 + 2 * C(4,1)/4
    assert ub.bound == Fraction(6, 4) + Fraction(8, 4)
    assert not ub.below_one
    assert bound_rows({0: 1}, [Fraction(1, 10)], [3], 5)[0][:2] == ("1/10", 3)
    assert formula_cap(0, 10, 2, Fraction(4, 3)) > 0


def test_iteration_sandwich():
    src = copy_source(3, 3, SupersatConfig(max_hyperedges=30))
    # K_{2,18} has no six-cycle, so it is theta_{3,3}-free
    I = [(0, j) for j in range(2, 20)] + [(1, j) for j in range(2, 20)]
    recs, it = iterate_containers(20, src, Fraction(16, 5), Fraction(1, 100), [I], Fraction(4, 3), 8, 9)
    rec = recs[0]
    assert rec.stop == "target"
    assert rec.sandwich(I)
    assert all(rec.mu_ok)
    assert it.h(rec.g) == rec.final
    counts, K = record_counts(recs)
    assert sum(counts.values()) == 1 and K == len(rec.final)
