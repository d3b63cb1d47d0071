"""Brute-force ground truth: theta-copy enumeration, exact ex(G, F), a
container coverage check and the threshold exponent table.

Nothing here calls into the builder or the container code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import networkx as nx

from .errors import DomainError, Truncated
from .graph_core import Assignment, Graph, two_density


def _adj(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _paths(adj, u: int, v: int, length: int) -> list[tuple[int, ...]]:
    """Simple u-v paths with exactly ``length`` edges."""
    out = []
    path = [u]
    on = {u}

    def rec():
        last = path[-1]
        if len(path) == length:
            if v in adj[last]:
                out.append(tuple(path) + (v,))
            return
        for z in sorted(adj[last]):
            if z in on or z == v:
                continue
            path.append(z)
            on.add(z)
            rec()
            on.discard(z)
            path.pop()

    if length == 1:
        return [(u, v)] if v in adj[u] else []
    rec()
    return out


def _theta_edge_sets(n: int, edges, a: int, b: int, cap: int | None):
    """Yields (edge set, hubs, paths) once per distinct copy."""
    if a < 1 or b < 1:
        raise DomainError("a, b >= 1 required")
    adj = _adj(n, edges)
    seen: set[frozenset] = set()
    for u, v in itertools.combinations(range(n), 2):
        if b == 1 and a > 1:
            break
        paths = _paths(adj, u, v, b)
        inner = [frozenset(p[1:-1]) for p in paths]
        chosen: list[int] = []

        def rec(start):
            if len(chosen) == a:
                es = frozenset(
                    frozenset(e) for j in chosen for e in zip(paths[j], paths[j][1:])
                )
                if es not in seen:
                    seen.add(es)
                    yield es, (u, v), [paths[j] for j in chosen]
                return
            for j in range(start, len(paths)):
                if all(inner[j].isdisjoint(inner[k]) for k in chosen):
                    chosen.append(j)
                    yield from rec(j + 1)
                    chosen.pop()

        yield from rec(0)


def enumerate_theta(g: Graph, a: int, b: int, cap: int | None = None):
    """Every theta_{a,b} subgraph of g exactly once, as a full-size assignment
    (u -> 0, v -> 1, the i-th interior vertex of path j -> 2 + (i-1)a + (j-1)).

    Returns a :class:`Truncated` marker once more than ``cap`` copies exist.
    """
    out = []
    for _, (u, v), paths in _theta_edge_sets(g.n, g.edges, a, b, cap):
        if cap is not None and len(out) >= cap:
            return Truncated(cap, len(out) + 1)
        pairs = [(0, u), (1, v)]
        for j, p in enumerate(paths, start=1):
            for i in range(1, b):
                pairs.append((2 + (i - 1) * a + (j - 1), p[i]))
        out.append(Assignment(pairs))
    return out


def count_theta(g: Graph, a: int, b: int) -> int:
    return sum(1 for _ in _theta_edge_sets(g.n, g.edges, a, b, None))


def copy_edge_sets(g: Graph, a: int, b: int) -> list[frozenset[frozenset[int]]]:
    return [es for es, _, _ in _theta_edge_sets(g.n, g.edges, a, b, None)]


# ---------------------------------------------------------------------------
# exact extremal number


@dataclass
class ExResult:
    value: int
    witness: tuple[tuple[int, int], ...]
    optimal: bool
    nodes: int
    copies: int

    def __int__(self) -> int:
        return self.value


class _Budget(Exception):
    pass


class _ExSolver:
    """Maximum F-free subgraph over bitmasks.

    Upper bound: deleting a vertex v from an optimum S leaves an F-free graph,
    so e(S) (n - 2) <= sum_v ex(G - v), computed recursively over induced
    subgraphs.  The same inequality forces deg_S(v) >= e(S) - ex(G - v),
    which prunes the include/exclude search.
    """

    def __init__(self, n: int, edges, copies, budget: int | None, iso: dict | None = None):
        self.n = n
        self.edges = [tuple(sorted(e)) for e in edges]
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.copies = [sum(1 << self.index[tuple(sorted(e))] for e in c) for c in copies]
        self.cvert = [
            sum(1 << v for v in {v for i in range(len(self.edges)) if c >> i & 1 for v in self.edges[i]})
            for c in self.copies
        ]
        self.by_edge: list[list[int]] = [[] for _ in self.edges]
        for k, c in enumerate(self.copies):
            for i in range(len(self.edges)):
                if c >> i & 1:
                    self.by_edge[i].append(k)
        self.budget = budget
        self.nodes = 0
        self.optimal = True
        self._memo: dict[int, tuple[int, int]] = {}
        self._iso: dict[str, list[tuple[nx.Graph, int]]] = {} if iso is None else iso

    def _sub(self, vmask: int):
        emask = 0
        for i, (u, v) in enumerate(self.edges):
            if vmask >> u & 1 and vmask >> v & 1:
                emask |= 1 << i
        cps = [k for k, vm in enumerate(self.cvert) if vm & ~vmask == 0]
        return emask, cps

    def greedy(self, emask: int, cps: list[int]) -> int:
        inc = 0
        live = set(cps)
        for i in range(len(self.edges)):
            if not emask >> i & 1:
                continue
            cand = inc | 1 << i
            if not any(self.copies[k] & ~cand == 0 for k in self.by_edge[i] if k in live):
                inc = cand
        return inc

    def _nx(self, emask: int) -> nx.Graph:
        h = nx.Graph()
        h.add_edges_from(self.edges[i] for i in range(len(self.edges)) if emask >> i & 1)
        return h

    def value(self, vmask: int) -> int:
        """ex of the subgraph induced by vmask, shared across isomorphic subgraphs."""
        if vmask in self._memo:
            return self._memo[vmask][0]
        emask, cps = self._sub(vmask)
        if not cps:
            return bin(emask).count("1")
        h = self._nx(emask)
        key = nx.weisfeiler_lehman_graph_hash(h)
        for other, val in self._iso.get(key, ()):
            if nx.is_isomorphic(h, other):
                return val
        val = self.solve(vmask)[0]
        self._iso.setdefault(key, []).append((h, val))
        return val

    def solve(self, vmask: int) -> tuple[int, int]:
        """(ex, witness mask) on the subgraph induced by vmask."""
        if vmask in self._memo:
            return self._memo[vmask]
        emask, cps = self._sub(vmask)
        if not cps:
            res = (bin(emask).count("1"), emask)
            self._memo[vmask] = res
            return res
        verts = [v for v in range(self.n) if vmask >> v & 1]
        sub = {v: self.value(vmask & ~(1 << v)) for v in verts}
        ub = sum(sub.values()) // (len(verts) - 2)
        ub = min(ub, bin(emask).count("1") - 1)
        best = self.greedy(emask, cps)
        lo = bin(best).count("1")
        target = ub
        while target > lo:
            found = self._search(emask, cps, target, sub)
            if found is not None:
                best = found
                break
            target -= 1
        res = (bin(best).count("1"), best)
        self._memo[vmask] = res
        return res

    def _search(self, emask: int, cps: list[int], target: int, sub: dict[int, int]):
        """An F-free subgraph with ``target`` edges, or None.

        The next edge sits at the vertex with the least degree slack
        (fail first), include branch first.  Once every other edge of a
        copy is included, its last edge is blocked at once, and blocked or
        excluded edges stop counting toward the degree and size budgets.
        Final degrees are at least max(need, current degree) and sum to
        2 * target, which caps how far any vertex may overshoot its floor.
        """
        order = [i for i in range(len(self.edges)) if emask >> i & 1]
        live = set(cps)
        free = [i for i in order if not any(k in live for k in self.by_edge[i])]
        fset = set(free)
        tight = [i for i in order if i not in fset]
        need = {v: target - s for v, s in sub.items()}
        avail = {v: 0 for v in sub}
        for i in order:
            for v in self.edges[i]:
                avail[v] += 1
        size = {k: bin(self.copies[k]).count("1") for k in live}
        have = {k: 0 for k in live}
        blocked = [0] * len(self.edges)
        decided = [False] * len(self.edges)
        state = {"inc": sum(1 << i for i in free), "count": len(free), "rem": len(tight)}
        deg = {v: 0 for v in sub}
        for i in free:
            for v in self.edges[i]:
                deg[v] += 1
        state["floor"] = sum(max(need[v], deg[v]) for v in sub)
        edges, copies, by_edge = self.edges, self.copies, self.by_edge

        def drop(j):
            u, v = edges[j]
            avail[u] -= 1
            avail[v] -= 1
            state["rem"] -= 1

        def undrop(j):
            u, v = edges[j]
            avail[u] += 1
            avail[v] += 1
            state["rem"] += 1

        def feasible(touched):
            if state["count"] + state["rem"] < target or state["floor"] > 2 * target:
                return False
            return all(avail[v] >= need[v] for v in touched)

        def bump(w, step):
            before = max(need[w], deg[w])
            deg[w] += step
            state["floor"] += max(need[w], deg[w]) - before

        def include(i):
            state["inc"] |= 1 << i
            state["count"] += 1
            for w in edges[i]:
                bump(w, 1)
            newly = []
            for k in by_edge[i]:
                if k not in live:
                    continue
                have[k] += 1
                if have[k] == size[k] - 1:
                    j = (copies[k] & ~state["inc"]).bit_length() - 1
                    blocked[j] += 1
                    if blocked[j] == 1 and not decided[j]:
                        drop(j)
                    newly.append(j)
            return newly

        def uninclude(i, newly):
            for j in newly:
                blocked[j] -= 1
                if blocked[j] == 0 and not decided[j]:
                    undrop(j)
            for k in by_edge[i]:
                if k in live:
                    have[k] -= 1
            state["inc"] &= ~(1 << i)
            state["count"] -= 1
            for w in edges[i]:
                bump(w, -1)

        def pick():
            best, key = None, None
            for i in tight:
                if decided[i] or blocked[i]:
                    continue
                u, v = edges[i]
                k = min(avail[u] - need[u], avail[v] - need[v])
                if key is None or k < key:
                    best, key = i, k
            return best

        def rec():
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _Budget
            if state["count"] >= target:
                return state["inc"]
            i = pick()
            if i is None:
                return None
            u, v = edges[i]
            decided[i] = True
            state["rem"] -= 1
            newly = include(i)
            touched = {u, v}.union(*(edges[j] for j in newly))
            got = rec() if feasible(touched) else None
            uninclude(i, newly)
            if got is None:
                avail[u] -= 1
                avail[v] -= 1
                if feasible((u, v)):
                    got = rec()
                avail[u] += 1
                avail[v] += 1
            state["rem"] += 1
            decided[i] = False
            return got

        if not feasible(need):
            return None
        return rec()


# values of solved subproblems by isomorphism class, per (a, b)
_ISO_CACHE: dict[tuple[int, int], dict] = {}


def exact_ex(g: Graph, a: int, b: int, budget: int | None = None) -> ExResult:
    """Largest theta_{a,b}-free subgraph of g, with a witness checked copy-free.

    With a ``budget`` (search nodes) an unfinished run returns the greedy
    subgraph with ``optimal=False``.
    """
    copies = copy_edge_sets(g, a, b)
    if not copies:
        return ExResult(g.m, tuple(g.edges), True, 0, 0)
    iso = _ISO_CACHE.setdefault((a, b), {}) if budget is None else {}
    solver = _ExSolver(g.n, g.edges, copies, budget, iso)
    full = (1 << g.n) - 1
    try:
        value, wmask = solver.solve(full)
        optimal = True
    except _Budget:
        emask, cps = solver._sub(full)
        wmask = solver.greedy(emask, cps)
        value = bin(wmask).count("1")
        optimal = False
    witness = tuple(solver.edges[i] for i in range(len(solver.edges)) if wmask >> i & 1)
    if count_theta(Graph.from_edges(g.n, witness), a, b):
        raise AssertionError("witness contains a copy")
    return ExResult(value, witness, optimal, solver.nodes, len(copies))


def greedy_free(g: Graph, a: int, b: int, order=None) -> int:
    """Size of the maximal F-free subgraph built by adding edges in order."""
    copies = copy_edge_sets(g, a, b)
    edges = list(order) if order is not None else list(g.edges)
    by_edge: dict[frozenset, list[frozenset]] = {}
    for c in copies:
        for e in c:
            by_edge.setdefault(e, []).append(c)
    kept: set[frozenset] = set()
    for e in edges:
        fe = frozenset(e)
        if not any(c - {fe} <= kept for c in by_edge.get(fe, ())):
            kept.add(fe)
    return len(kept)


def deletion_bound(g: Graph, a: int, b: int) -> int:
    """e(G) minus the number of copies (one edge removed per copy)."""
    return g.m - count_theta(g, a, b)


# ---------------------------------------------------------------------------
# container coverage


@dataclass
class CoverVerdict:
    covered: bool
    checked: int
    exhaustive: bool
    witness: frozenset | None = None


def _free_subsets(m: int, copies: list[int]):
    by_top: list[list[int]] = [[] for _ in range(m)]
    for c in copies:
        by_top[c.bit_length() - 1].append(c)

    def rec(i, cur):
        if i == m:
            yield cur
            return
        yield from rec(i + 1, cur)
        nxt = cur | 1 << i
        if not any(c & ~nxt == 0 for c in by_top[i]):
            yield from rec(i + 1, nxt)

    yield from rec(0, 0)


def verify_cover(g: Graph, a: int, b: int, containers: Iterable, sample: int | None = None, rng=None) -> CoverVerdict:
    """Is every theta_{a,b}-free subgraph of g inside some container?

    Containers are collections of host edges.  Exhaustive when e(g) <= 20 and
    no ``sample`` is given; otherwise ``sample`` random free subgraphs.
    """
    edges = [tuple(sorted(e)) for e in g.edges]
    index = {e: i for i, e in enumerate(edges)}
    cmasks = []
    for c in containers:
        mask = 0
        for e in c:
            e = tuple(sorted(e))
            if e not in index:
                raise DomainError(f"container edge {e} is not a host edge")
            mask |= 1 << index[e]
        cmasks.append(mask)
    copies = [sum(1 << index[tuple(sorted(e))] for e in c) for c in copy_edge_sets(g, a, b)]
    exhaustive = sample is None and len(edges) <= 20
    if exhaustive:
        pool = _free_subsets(len(edges), copies)
    else:
        if rng is None:
            raise DomainError("sampling needs an rng")

        def draws():
            for _ in range(sample or 200):
                order = list(range(len(edges)))
                rng.shuffle(order)
                keep, cur = rng.random(), 0
                for i in order:
                    if rng.random() < keep:
                        nxt = cur | 1 << i
                        if not any(c & ~nxt == 0 for c in copies):
                            cur = nxt
                yield cur

        pool = draws()
    checked = 0
    for I in pool:
        checked += 1
        if not any(I & ~c == 0 for c in cmasks):
            wit = frozenset(edges[i] for i in range(len(edges)) if I >> i & 1)
            return CoverVerdict(False, checked, exhaustive, wit)
    return CoverVerdict(True, checked, exhaustive)


# ---------------------------------------------------------------------------
# exponents


@dataclass(frozen=True)
class ExponentRecord:
    a: int
    b: int
    m2: Fraction
    sparse_exponent: Fraction
    dense_exponent: Fraction
    log_power: int
    cross_checked: bool

    @property
    def inverse_m2(self) -> Fraction:
        return 1 / self.m2

    def rows(self) -> list[tuple[str, str]]:
        a, b = self.a, self.b
        return [
            ("m2", str(self.m2)),
            ("1/m2", str(self.inverse_m2)),
            ("p2", f"n^({self.sparse_exponent})"),
            ("p1", f"n^({self.dense_exponent}) (log n)^{self.log_power}"),
            ("ex dense", f"p^(1/{b}) n^(1+1/{b})"),
            ("ex middle", f"n^(2-{a * (b - 1)}/{a * b - 1}) (log n)^O(1)"),
        ]


def theta_graph(a: int, b: int) -> Graph:
    """theta_{a,b} built directly (hubs 0 and 1)."""
    edges = []
    nxt = 2
    for _ in range(a):
        prev = 0
        for _ in range(b - 1):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def exponent_table(a: int, b: int, cross_check: bool | None = None) -> ExponentRecord:
    """m_2(theta_{a,b}) = (ab-1)/(a(b-1)) and the thresholds
    p2 = n^{-a(b-1)/(ab-1)}, p1 = n^{-(b-1)/(ab-1)} (log n)^{2b}.

    The closed form is compared with a direct 2-density computation when the
    pattern is small enough (by default up to 40 vertices).
    """
    if a < 2 or b < 2:
        raise DomainError("a, b >= 2 required")
    m2 = Fraction(a * b - 1, a * (b - 1))
    small = a * (b - 1) + 2 <= 40
    do = small if cross_check is None else cross_check
    checked = False
    if do:
        got = two_density(theta_graph(a, b)).value
        if got != m2:
            raise AssertionError(f"2-density {got} differs from {m2}")
        checked = True
    return ExponentRecord(
        a, b, m2, -Fraction(a * (b - 1), a * b - 1), -Fraction(b - 1, a * b - 1), 2 * b, checked
    )
