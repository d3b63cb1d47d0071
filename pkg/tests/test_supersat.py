import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from thetasat import (
    CollectionFamily,
    DomainError,
    Exhausted,
    Graph,
    SupersatConfig,
    ThetaPattern,
    compatible,
    edge_hypergraph,
    epsilon_schedule,
    min_degree_core,
    refine_paths,
    scale_parameters,
    supersaturate,
)
from thetasat.graph_core import U, V, Assignment, edge_image, is_valid, project
from thetasat.oracle import theta_graph
from thetasat.pruning import remove_saturated_edges
from thetasat.supersat import BuilderState, copy_source, extend_case_b, graph_k


@pytest.fixture(scope="module")
def small_run():
    return supersaturate(Graph.complete(14), 3, 3, SupersatConfig(max_hyperedges=20))


def random_assignment(rng, pattern, n, size):
    ws = rng.sample(list(pattern.vertices), size)
    zs = rng.sample(range(n), size)
    return frozenset(zip(ws, zs))


def test_config_round_trip():
    cfg = SupersatConfig.from_dict({"delta": "1/4", "fanout": 8})
    assert SupersatConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(DomainError):
        SupersatConfig.from_dict({"speed": 3})
    with pytest.raises(DomainError):
        SupersatConfig.from_dict({"c": 2})


def test_builder_domain():
    with pytest.raises(DomainError):
        supersaturate(Graph.complete(10), 2, 3)


@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_compatible_on_empty_family(seed, size):
    rng = random.Random(seed)
    g = Graph.complete(10) if seed % 2 else Graph.cycle(10)
    p = ThetaPattern(3, 3)
    fam = CollectionFamily(p, g, 2, "3/10")
    chi = random_assignment(rng, p, g.n, size)
    res = compatible(fam, chi, 0, 2)
    assert bool(res.ok) == is_valid(p, g, chi)
    if not res.ok:
        assert res.family == "valid"


@given(st.integers(0, 10 ** 6), st.integers(2, 8))
def test_forest_shortcut_is_sound(small_run, seed, size):
    fam = small_run.family
    g0, _ = remove_saturated_edges(fam.host, fam.union, fam.params("forest"))
    rng = random.Random(seed)
    # draw from the pattern vertices of existing hyperedges so subsets have positive degree
    h = rng.choice(fam.union.hyperedges)
    chi = frozenset(rng.sample(sorted(h), size))
    if not is_valid(fam.pattern, g0, chi):
        return
    for (s, t) in fam.by_st:
        fast = compatible(fam, chi, s, t, shortcut=True)
        slow = compatible(fam, chi, s, t, shortcut=False)
        assert bool(fast.ok) == bool(slow.ok)


def test_small_run_is_good(small_run):
    res = small_run
    assert len(res.family) == 20 and res.stop == "Budget"
    assert all(not v for v in res.goodness.values())
    assert not res.prime_violations
    F = nx.Graph(theta_graph(3, 3).edges)
    for h in res.family.union:
        pr = project(h, res.family.pattern, res.family.host)
        assert nx.is_isomorphic(nx.Graph([tuple(e) for e in pr.edges]), F)
    m = res.manifest()
    assert m["hyperedges"] == 20 and m["goodness"]["prime_violations"] == 0


def test_builder_is_deterministic(small_run):
    again = supersaturate(Graph.complete(14), 3, 3, SupersatConfig(max_hyperedges=20))
    assert again.family.union.hyperedges == small_run.family.union.hyperedges


def test_edge_translation(small_run):
    res = small_run
    eh, rep = edge_hypergraph(res.hprime, res.family.D("prime", 0, res.t), cap=2)
    assert rep.loss_ok and not rep.violations and rep.x_ok
    assert rep.size == len({edge_image(h, res.family.pattern) for h in res.hprime})


def test_case_b_extension():
    g = Graph.complete(16)
    b = 3
    core = min_degree_core(g, b)
    gp, labels = g.induced(core.vertices)
    sp = scale_parameters(gp, g.n, graph_k(g, b), b)
    eps = epsilon_schedule(b)
    cert = refine_paths(gp, 0, b, sp, eps, fanout_floor=6)
    fam = CollectionFamily(ThetaPattern(3, 3), g, graph_k(g, b), "3/10")
    state = BuilderState(g, g, gp, labels, sp, cert, 0)
    out = extend_case_b(state, fam)
    assert not isinstance(out, Exhausted)
    h, s, t = out
    assert t == b and 0 <= s <= fam.s_max
    assert is_valid(fam.pattern, g, h) and len(h) == fam.pattern.n_vertices
    assert (U, 0) in h and (V, state.y) in h
    fam.insert(h, s, t)
    assert all(not v for v in fam.goodness().values())


def test_copy_source_returns_theta_edge_sets():
    src = copy_source(3, 3, SupersatConfig(max_hyperedges=5))
    edges = list(Graph.complete(12).edges)
    copies = src(edges, 12)
    assert 1 <= len(copies) <= 5
    F = nx.Graph(theta_graph(3, 3).edges)
    for c in copies:
        assert nx.is_isomorphic(nx.Graph(c), F)


def test_hyperedge_assignment_type(small_run):
    assert all(isinstance(h, Assignment) for h in small_run.family.union)
