import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thetasat import Codegree, CodegreeParams, DomainError, GHypergraph, Graph, ThetaPattern, is_good
from thetasat.exact import Alg, is_unbounded
from thetasat.graph_core import U, V, Assignment
from thetasat.hypergraph import (
    link_bound,
    link_set,
    path_complete_signature,
    s_max,
    saturated,
    signature_of,
    simplified_bound_check,
)
from thetasat.oracle import enumerate_theta


def test_codegree_frozen_values(frozen):
    want = frozen["codegree"]
    p63 = ThetaPattern(6, 3)
    fam = CodegreeParams(6, 3, 2, 64, Fraction(1, 10), "forest")
    assert Codegree(fam)({U, p63.w(1, 1)}) == want["forest_e1"]
    fam4 = fam.with_(k=4)
    assert Codegree(fam4)({U, p63.w(1, 1), p63.w(2, 1)}) == want["forest_e2"]
    for s in (0, 3):
        sb = CodegreeParams(6, 3, 2, 64, Fraction(1, 10), "sb", s=s)
        assert Codegree(sb)({U, V}) == want[f"sb_s{s}"]
    st_ = CodegreeParams(3, 4, 8, 16, Fraction(1, 2), "st", s=0, t=2)
    assert Codegree(st_)({U, V}) == want["st_0_2"]
    p34 = ThetaPattern(3, 4)
    tt = CodegreeParams(3, 4, 2, 16, Fraction(1, 2), "t", t=3)
    nu = {U, V, p34.w(3, 1)}
    assert signature_of(p34, nu, 3).g == 0
    assert Codegree(tt)(nu) == want["t_only"]
    irr = CodegreeParams(3, 3, 3, 20, Fraction(3, 10), "forest")
    assert Codegree(irr)({U, 2}) == want["forest_irrational"]


def test_codegree_unbounded_off_family():
    p = ThetaPattern(3, 3)
    forest = Codegree(CodegreeParams(3, 3, 2, 64, Fraction(1, 10), "forest"))
    assert is_unbounded(forest({U}))  # no edge
    assert is_unbounded(forest(set(p.vertices)))  # the whole theta has cycles
    sb = Codegree(CodegreeParams(3, 3, 2, 64, Fraction(1, 10), "sb"))
    assert is_unbounded(sb({U, 2}))


def test_codegree_domain_errors():
    with pytest.raises(DomainError):
        CodegreeParams(3, 3, 2, 64, Fraction(1, 10), "st", t=3)
    with pytest.raises(DomainError):
        CodegreeParams(3, 3, 2, 64, Fraction(1, 10), "bogus")
    with pytest.raises(DomainError):
        CodegreeParams(3, 3, 2, 64, Fraction(1, 10), "sb", s=s_max(64) + 1)
    with pytest.raises(DomainError):
        CodegreeParams(3, 3, 2, 64, 0, "forest")


def test_s_max():
    assert s_max(64) == 18 and s_max(20) == 13 and s_max(1) == 0


def test_irrational_k_accepted():
    k = Alg.of(40) / Alg.power(10, Fraction(4, 3))
    D = Codegree(CodegreeParams(3, 3, k, 10, Fraction(3, 10), "forest"))
    assert D({U, 2}) >= 1


def _c4_hypergraph():
    g = Graph.complete(5)
    p = ThetaPattern(2, 2)
    h = GHypergraph(p, g)
    for chi in enumerate_theta(g, 2, 2):
        h.add(chi)
    return p, g, h


def test_degree_index_matches_scan():
    p, g, h = _c4_hypergraph()
    assert len(h) == 15
    for chi in [(), ((U, 0),), ((U, 0), (V, 1)), ((U, 0), (2, 1), (V, 2))]:
        assert h.degree(chi) == sum(1 for e in h if frozenset(chi) <= e)


def test_duplicate_and_invalid_rejected():
    p, g, h = _c4_hypergraph()
    first = next(iter(h))
    with pytest.raises(DomainError):
        h.add(first)
    with pytest.raises(Exception):
        h.add([(U, 0), (2, 0), (V, 1), (3, 2)])


def test_goodness_against_constant():
    p, g, h = _c4_hypergraph()
    assert is_good(h, lambda nu: 15, cap=4).good
    rep = is_good(h, lambda nu: 1 if len(nu) == 1 else 10 ** 9, cap=2)
    assert not rep.good and all(len(v[0]) == 1 for v in rep.violations)


def test_link_set_and_bound():
    p, g, h = _c4_hypergraph()
    chi = Assignment([(U, 0)])
    D = lambda nu: 2 if len(nu) == 2 else 1000  # noqa: E731
    J = link_set(h, D, chi, {V})
    for gamma in J:
        assert h.degree(chi | gamma) >= 2
    bound = link_bound(p, 1000, 2)
    assert len(J) <= bound
    assert saturated(h, D, chi | next(iter(J)))


def test_jsonl_round_trip():
    p, g, h = _c4_hypergraph()
    h2 = GHypergraph.from_jsonl(h.to_jsonl(), p, g)
    assert h2.hyperedges == h.hyperedges


@given(st.lists(st.sampled_from(range(15)), unique=True, max_size=15), st.integers(0, 4))
def test_degree_index_property(picks, size):
    g = Graph.complete(5)
    p = ThetaPattern(2, 2)
    allc = enumerate_theta(g, 2, 2)
    h = GHypergraph(p, g, cap=2)
    for i in picks:
        h.add(allc[i])
    for e in h:
        for sub in itertools.combinations(sorted(e), min(size, 4)):
            assert h.degree(sub) == sum(1 for x in h if frozenset(sub) <= x)


def test_bound_checker_large_a_feasible():
    assert simplified_bound_check(100, 3, with_grid=False).feasible


def test_bound_checker_proof_route_boundary():
    k8 = path_complete_signature(8, 4, 2, 2)
    rep8 = simplified_bound_check(8, 4, route="proof", ts=[2], with_grid=False)
    rep9 = simplified_bound_check(9, 4, route="proof", ts=[2], with_grid=False)
    assert not all(v.feasible for v in rep8.find(2, 2))
    assert all(v.feasible for v in rep9.find(2, 2))
    assert k8.size == 8 and k8.e == 8


def test_bound_checker_needs_b3():
    with pytest.raises(DomainError):
        simplified_bound_check(3, 2)
