import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from thetasat import DomainError, Graph, ThetaPattern, is_valid, project, two_density
from thetasat.graph_core import U, V, edge_image, sample_gnp, validate_assignment


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def test_labels_are_row_major():
    p = ThetaPattern(3, 4)
    assert p.n_vertices == 11 and p.n_edges == 12
    assert p.w(1, 1) == 2 and p.w(1, 3) == 4 and p.w(2, 1) == 5 and p.w(3, 3) == 10
    assert p.path(2) == (U, 3, 6, 9, V)
    for x in range(2, p.n_vertices):
        assert p.w(*p.position(x)) == x


def test_pattern_is_theta():
    p = ThetaPattern(3, 3)
    g = nx.Graph(p.edges)
    assert g.degree[U] == 3 and g.degree[V] == 3
    assert sorted(d for _, d in g.degree) == [2] * 6 + [3, 3]


@pytest.mark.parametrize("a,b", [(1, 3), (3, 1), (0, 0)])
def test_pattern_domain(a, b):
    with pytest.raises(DomainError):
        ThetaPattern(a, b)


def test_forest_rule_matches_networkx():
    p = ThetaPattern(2, 3)
    for r in range(1, p.n_vertices + 1):
        for nu in itertools.combinations(p.vertices, r):
            sub = nx.Graph()
            sub.add_nodes_from(nu)
            sub.add_edges_from((x, y) for x, y in p.edges if x in nu and y in nu)
            assert p.induces_forest(nu) == nx.is_forest(sub)


def test_validity_conditions():
    p = ThetaPattern(2, 2)
    g = Graph.cycle(4)
    assert is_valid(p, g, [(U, 0), (2, 1), (V, 2), (3, 3)])
    rep = validate_assignment(p, g, [(U, 0), (2, 0)])
    assert not rep and rep.condition == 1
    rep = validate_assignment(p, g, [(U, 0), (2, 2)])
    assert not rep and rep.condition == 2


def test_projection_of_full_copy():
    p = ThetaPattern(2, 2)
    chi = [(U, 0), (2, 1), (V, 2), (3, 3)]
    pr = project(chi, p, Graph.cycle(4))
    assert pr.edges == Graph.cycle(4).edge_set()
    assert edge_image(chi, p) == pr.edges


def test_edgelist_round_trip():
    g = Graph.from_edges(5, [(3, 1), (0, 4), (2, 1)])
    assert Graph.from_edgelist(g.to_edgelist()) == g
    assert Graph.from_edgelist(g.to_edgelist()).to_edgelist() == g.to_edgelist()
    with pytest.raises(DomainError):
        Graph.from_edgelist("3 2\n0 1\n")


def test_two_density_frozen(frozen):
    for key, (num, den) in frozen["two_density_theta"].items():
        a, b = map(int, key.split(","))
        assert two_density(ThetaPattern(a, b).as_graph()).value == Fraction(num, den)


def test_two_density_small_graphs():
    assert two_density(Graph.complete(4)).value == Fraction(5, 2)
    assert two_density(Graph.cycle(5)).value == Fraction(4, 3)
    assert two_density(Graph.from_edges(4, [(0, 1), (2, 3)])).value == Fraction(1, 2)


@given(graphs(max_n=7))
def test_two_density_brute(g):
    if g.m < 2:
        return
    best = None
    for r in range(2, g.m + 1):
        for sub in itertools.combinations(g.edges, r):
            vs = {x for e in sub for x in e}
            val = Fraction(r - 1, len(vs) - 2)
            best = val if best is None or val > best else best
    assert two_density(g).value == best


def test_gnp_reproducible_and_monotone():
    a = sample_gnp(20, Fraction(1, 3), 7)
    assert a == sample_gnp(20, Fraction(1, 3), 7)
    b = sample_gnp(20, Fraction(2, 3), 7)
    assert a.edge_set() <= b.edge_set()
    assert sample_gnp(6, 1, 0).m == 15 and sample_gnp(6, 0, 0).m == 0
