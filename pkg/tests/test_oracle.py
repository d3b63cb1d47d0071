import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from thetasat import Graph, ThetaPattern, Truncated, enumerate_theta, exact_ex, exponent_table, verify_cover
from thetasat.graph_core import edge_image, is_valid
from thetasat.oracle import copy_edge_sets, count_theta, deletion_bound, greedy_free, theta_graph


def nx_graph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def embeddings_over_aut(g: Graph, a: int, b: int) -> int:
    F = nx_graph(theta_graph(a, b))
    gm = nx.algorithms.isomorphism.GraphMatcher
    emb = sum(1 for _ in gm(nx_graph(g), F).subgraph_monomorphisms_iter())
    aut = sum(1 for _ in gm(F, F).isomorphisms_iter())
    assert emb % aut == 0
    return emb // aut


@st.composite
def small_graphs(draw, lo=4, hi=7):
    n = draw(st.integers(lo, hi))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def test_copies_frozen(frozen):
    c = frozen["copies"]
    assert count_theta(Graph.complete(4), 2, 2) == c["C4_in_K4"]
    assert count_theta(Graph.complete(5), 2, 2) == c["C4_in_K5"]
    assert count_theta(Graph.complete_bipartite(3, 3), 2, 3) == c["C6_in_K33"]
    assert count_theta(Graph.complete(6), 2, 3) == c["C6_in_K6"]
    assert count_theta(Graph.complete_bipartite(2, 3), 3, 2) == c["K23_in_K23"]
    assert count_theta(Graph.complete(8), 3, 3) == c["theta33_in_K8"]


def test_ex_frozen(frozen):
    for key, n in (("K4_C4", 4), ("K5_C4", 5), ("K6_C4", 6)):
        r = exact_ex(Graph.complete(n), 2, 2)
        assert r.optimal and r.value == frozen["ex"][key]
        assert len(r.witness) == r.value


def test_enumeration_gives_valid_distinct_copies():
    g = Graph.complete(6)
    p = ThetaPattern(2, 3)
    copies = enumerate_theta(g, 2, 3)
    assert all(is_valid(p, g, chi) and len(chi) == p.n_vertices for chi in copies)
    assert len({edge_image(chi, p) for chi in copies}) == len(copies) == 60


def test_enumeration_cap():
    assert isinstance(enumerate_theta(Graph.complete(6), 2, 2, cap=10), Truncated)


@pytest.mark.parametrize("a,b,n", [(2, 2, 7), (2, 3, 7), (3, 2, 7), (2, 4, 8)])
def test_count_equals_embeddings_over_automorphisms_complete(a, b, n):
    g = Graph.complete(n)
    assert count_theta(g, a, b) == embeddings_over_aut(g, a, b)


@given(small_graphs(), st.sampled_from([(2, 2), (2, 3), (3, 2)]))
def test_count_equals_embeddings_over_automorphisms(g, ab):
    assert count_theta(g, *ab) == embeddings_over_aut(g, *ab)


@given(small_graphs(4, 7))
def test_ex_sandwich(g):
    r = exact_ex(g, 2, 2)
    assert r.optimal
    assert r.value >= greedy_free(g, 2, 2) >= deletion_bound(g, 2, 2)
    assert count_theta(Graph.from_edges(g.n, r.witness), 2, 2) == 0


@given(small_graphs(4, 7), st.data())
def test_ex_monotone_under_edge_addition(g, data):
    missing = [e for e in itertools.combinations(range(g.n), 2) if not g.has_edge(*e)]
    if not missing:
        return
    e = data.draw(st.sampled_from(missing))
    bigger = Graph.from_edges(g.n, list(g.edges) + [e])
    lo, hi = exact_ex(g, 2, 2).value, exact_ex(bigger, 2, 2).value
    assert lo <= hi <= lo + 1


def test_ex_c4_k10():
    assert exact_ex(Graph.complete(10), 2, 2).value == 16


def test_budget_fallback_flags_nonoptimal():
    r = exact_ex(Graph.complete(10), 2, 2, budget=5)
    assert not r.optimal and r.value <= 16


def test_cover_verdict():
    g = Graph.complete(4)
    whole = [list(g.edges)]
    assert verify_cover(g, 2, 2, whole).covered
    v = verify_cover(g, 2, 2, [[(0, 1)]])
    assert not v.covered and v.witness is not None
    v = verify_cover(Graph.complete(7), 2, 2, whole, sample=20, rng=random.Random(1))
    assert not v.exhaustive


def test_exponent_table():
    rec = exponent_table(3, 3)
    assert rec.m2 == Fraction(4, 3) and rec.cross_checked
    assert rec.sparse_exponent == Fraction(-3, 4) and rec.dense_exponent == Fraction(-1, 4)
    big = exponent_table(100, 3)
    assert 1 / big.m2 == Fraction(200, 299)


def test_copy_edge_sets_are_theta():
    F = nx_graph(theta_graph(2, 3))
    for es in copy_edge_sets(Graph.complete(6), 2, 3)[:20]:
        assert nx.is_isomorphic(nx.Graph([tuple(e) for e in es]), F)
