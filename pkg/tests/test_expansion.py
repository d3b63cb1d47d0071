from fractions import Fraction

import pytest

from thetasat import DomainError, Failure, Graph, epsilon_schedule, min_degree_core, refine_paths, scale_parameters, verify_expansion, x_set
from thetasat.expansion import ExpansionCertificate, ForestIndex, branching_factor, t_estimate
from thetasat.graph_core import Assignment, ThetaPattern
from thetasat.supersat import graph_k


def test_schedule_values():
    eps = epsilon_schedule(3)
    assert eps(3) == Fraction(1, 2)
    assert eps(2) == Fraction(1, 2) / 64
    assert eps.ratio == 64
    with pytest.raises(DomainError):
        eps(4)
    with pytest.raises(DomainError):
        epsilon_schedule(3, 0)


def _pipeline(n, b):
    g = Graph.complete(n)
    core = min_degree_core(g, b)
    gp, _ = g.induced(core.vertices)
    sp = scale_parameters(gp, n, graph_k(g, b), b)
    eps = epsilon_schedule(b)
    return gp, sp, eps


def test_t_estimate_in_range():
    gp, sp, eps = _pipeline(12, 3)
    r = t_estimate(gp, 0, sp, eps)
    assert not isinstance(r, Failure)
    t, layers = r
    assert 2 <= t <= 3 and layers[0] == {0}


def test_certificate_on_complete_graph():
    gp, sp, eps = _pipeline(16, 3)
    xs = x_set(gp, sp, eps)
    assert not isinstance(xs, Failure) and xs.t == 2
    x = min(xs.X)
    cert = refine_paths(gp, x, xs.t, sp, eps, layers=xs.neighborhoods[x], fanout_floor=6, X=xs.X)
    assert isinstance(cert, ExpansionCertificate)
    rep = verify_expansion(cert, sp, gp)
    assert rep.all_positive and rep.epsilon > 0
    assert set(rep.clauses) == set("abcdefgh")
    for p in cert.paths:
        assert p[0] == x and len(p) == cert.t + 1
        assert all(gp.has_edge(u, v) for u, v in zip(p, p[1:]))
    assert ExpansionCertificate.from_json(cert.to_json()).paths == cert.paths


def test_forbidden_forest_blocks_paths():
    gp, sp, eps = _pipeline(16, 3)
    xs = x_set(gp, sp, eps)
    x = min(xs.X)
    cert = refine_paths(gp, x, xs.t, sp, eps, layers=xs.neighborhoods[x], fanout_floor=6, X=xs.X)
    p = cert.paths[0]
    # forbid the first edge of the first path as a forest on u and w_1^1
    pat = ThetaPattern(3, 3)
    forest = Assignment([(0, p[0]), (pat.w(1, 1), p[1])])
    idx = ForestIndex([forest], pat)
    assert idx.contained_in(p)
    assert ForestIndex([[p[:2]]]).contained_in(p)
    rep = verify_expansion(cert, sp, gp, forbidden=idx)
    assert rep.clauses["g"] == 0.0


def test_branching_factor():
    assert branching_factor([(0, 1, 2), (0, 1, 3), (0, 4, 5)]) == 2
