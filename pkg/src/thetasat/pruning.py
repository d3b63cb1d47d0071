"""Saturated-edge removal, the min-degree core, the weighted core and the
(m, l, r) scale parameters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .errors import DomainError, EmptyGraph, EmptyWeight
from .exact import Alg
from .graph_core import Graph, MultiGraph
from .hypergraph import CodegreeParams, GHypergraph, _forest_value


def saturation_threshold(params: CodegreeParams) -> int:
    """ceil(k^{ab} n^2 / (delta k n^{1+1/b})): D_forest of a single edge."""
    return _forest_value(params.with_(family="forest"), 1).ceil()


def remove_saturated_edges(
    g: Graph, h: GHypergraph, params: CodegreeParams
) -> tuple[Graph, list[tuple[int, int]]]:
    """Drop every host edge zz' carried by some two-pair assignment whose
    degree already reaches the single-edge forest threshold."""
    threshold = saturation_threshold(params)
    hot: set[frozenset[int]] = set()
    for chi, cnt in h.indexed_sets(2):
        if len(chi) == 2 and cnt >= threshold:
            (w1, z1), (w2, z2) = tuple(chi)
            if g.has_edge(z1, z2):
                hot.add(frozenset((z1, z2)))
    removed = [e for e in g.edges if frozenset(e) in hot]
    return g.without_edges(removed), removed


# ---------------------------------------------------------------------------
# min-degree core


def _meets_core_bound(mindeg: int, vprime: int, n: int, e: int, b: int) -> bool:
    """mindeg >= 2^{-b} (v'/n)^{1/b} e / v', i.e.
    (mindeg * v' * 2^b)^b * n >= v' * e^b."""
    return (mindeg * vprime * 2 ** b) ** b * n >= vprime * e ** b


@dataclass(frozen=True)
class CoreResult:
    core: MultiGraph
    rounds: int
    min_degree: int


def min_degree_core(g: MultiGraph | Graph, b: int, detail: bool = False):
    """Induced subgraph G' with min degree >= 2^{-b} (v(G')/n)^{1/b} e(G)/v(G').

    Round r deletes, repeatedly, every vertex of degree below
    2^{(b-1)r-1} e/n; the first round output meeting the bound is returned.
    """
    if isinstance(g, Graph):
        g = MultiGraph.from_graph(g)
    if b < 1:
        raise DomainError("b >= 1 required")
    e, n = g.m, g.n
    if e == 0:
        raise EmptyGraph("the input has no edges")
    alive = set(g.vertices)
    incident: dict[int, list[int]] = {v: [] for v in g.vertices}
    for idx, (u, v) in enumerate(g.edges):
        incident[u].append(idx)
        if v != u:
            incident[v].append(idx)
    deg = {v: len(incident[v]) for v in g.vertices}
    edge_alive = [True] * e

    def current():
        return g.induced(alive)

    r = 0
    limit = 4 * (n.bit_length() + 2) + 8
    while True:
        if alive:
            mind = min(deg[v] for v in alive)
            if _meets_core_bound(mind, len(alive), n, e, b):
                res = current()
                return CoreResult(res, r, mind) if detail else res
        if r > limit or not alive:
            raise AssertionError("round procedure failed to meet the core bound")
        # threshold 2^{(b-1)r-1} e / n, compared exactly: deg < thr  <=>  deg*n*2 < e*2^{(b-1)r}
        scale = 2 ** ((b - 1) * r)
        stack = [v for v in alive if deg[v] * n * 2 < e * scale]
        while stack:
            v = stack.pop()
            if v not in alive:
                continue
            alive.discard(v)
            for idx in incident[v]:
                if edge_alive[idx]:
                    edge_alive[idx] = False
                    x, y = g.edges[idx]
                    for w in {x, y} - {v}:
                        deg[w] -= 1
                        if w in alive and deg[w] * n * 2 < e * scale:
                            stack.append(w)
        r += 1


def weighted_core(B: Iterable[Hashable], f: Mapping[Hashable, int], b: int) -> list:
    """Subset B' with min f >= 2^{-b} (|B'|/|B|)^{1/b} sum(f)/|B'|.

    Each y gets f(y) loops; the min-degree core of that multigraph is B'.
    """
    items = list(B)
    if b <= 1:
        raise DomainError("b > 1 required")
    total = sum(int(f[y]) for y in items)
    if total == 0:
        raise EmptyWeight("all weights are zero")
    index = {y: i for i, y in enumerate(items)}
    loops = [(i, i) for y, i in index.items() for _ in range(int(f[y]))]
    core = min_degree_core(MultiGraph.from_edges(range(len(items)), loops), b)
    return [items[i] for i in sorted(core.vertices)]


def weighted_core_ok(Bprime, B, f, b) -> bool:
    if not Bprime:
        return False
    total = sum(int(f[y]) for y in B)
    return _meets_core_bound(min(int(f[y]) for y in Bprime), len(Bprime), len(B), total, b)


# ---------------------------------------------------------------------------
# scale parameters


@dataclass(frozen=True)
class ScaleParams:
    """m = v(G'), l = mindeg / m^{1/b} kept as the triple (mindeg, m, b), and
    r with 2^{-r} n <= m < 2^{-r+1} n."""

    m: int
    min_degree: int
    b: int
    r: int
    n: int

    @property
    def ell(self) -> Alg:
        return Alg.of(self.min_degree) / Alg.power(self.m, Fraction(1, self.b))

    @property
    def ell_triple(self) -> tuple[int, int, int]:
        return (self.min_degree, self.m, self.b)

    @property
    def lm(self) -> int:
        """l * m^{1/b}, which is just the minimum degree."""
        return self.min_degree

    def ell_pow(self, q) -> Alg:
        return self.ell ** Fraction(q)

    def m_pow(self, q) -> Alg:
        return Alg.power(self.m, Fraction(q))

    def check_ell_lower(self, k) -> bool:
        """l >= 4^{-b} 2^r k."""
        return self.ell >= Alg.power(4, -self.b) * Alg.power(2, self.r) * Alg.of(k)

    def check_min_degree_identity(self) -> bool:
        """l^{b/(b-1)} <= l m^{1/b}."""
        if self.b == 1:
            return True
        return self.ell ** Fraction(self.b, self.b - 1) <= Alg.of(self.min_degree)


def scale_index(m: int, n: int) -> int:
    """The unique r with 2^{-r} n <= m < 2^{-r+1} n."""
    if not (1 <= m <= n):
        raise DomainError("need 1 <= m <= n")
    r = 0
    while (m << r) < n:
        r += 1
    return r


def scale_parameters(gprime: Graph, n: int, k, b: int) -> ScaleParams:
    """Scale parameters of a core; ``k`` is accepted for the l >= 4^{-b} 2^r k check
    done by :meth:`ScaleParams.check_ell_lower`."""
    if gprime.n == 0:
        raise DomainError("empty graph")
    mind = gprime.min_degree()
    if mind == 0:
        raise DomainError("zero minimum degree")
    return ScaleParams(gprime.n, mind, b, scale_index(gprime.n, n), n)
