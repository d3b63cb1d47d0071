"""Hypergraph containers: the codegree parameter delta(H, tau), a max-degree
fingerprint ("scythe") container algorithm, the round-by-round iteration over
graphs, and the G(n,p) union-bound evaluator."""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .errors import DomainError, EmptyHypergraph
from .exact import Alg


@dataclass(frozen=True)
class UniformHypergraph:
    N: int
    r: int
    hyperedges: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, N: int, r: int, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        seen = []
        known = set()
        for e in edges:
            fe = frozenset(e)
            if len(fe) != r:
                raise DomainError(f"hyperedge {sorted(fe)} is not of size {r}")
            if not all(0 <= v < N for v in fe):
                raise DomainError(f"hyperedge {sorted(fe)} leaves [0, {N})")
            if fe not in known:
                known.add(fe)
                seen.append(fe)
        return cls(N, r, tuple(seen))

    @classmethod
    def random(cls, N: int, r: int, m: int, rng) -> "UniformHypergraph":
        pool = list(itertools.combinations(range(N), r))
        m = min(m, len(pool))
        return cls.from_edges(N, r, rng.sample(pool, m))

    @property
    def e(self) -> int:
        return len(self.hyperedges)

    def induced_count(self, S) -> int:
        S = set(S)
        return sum(1 for h in self.hyperedges if h <= S)

    def is_independent(self, S) -> bool:
        return self.induced_count(S) == 0

    def independent_sets(self) -> Iterator[frozenset[int]]:
        """Every independent set, by backtracking over vertices in order."""
        by_max: dict[int, list[frozenset[int]]] = {v: [] for v in range(self.N)}
        for h in self.hyperedges:
            by_max[max(h)].append(h)
        cur: set[int] = set()

        def rec(v):
            if v == self.N:
                yield frozenset(cur)
                return
            yield from rec(v + 1)
            cur.add(v)
            if not any(h <= cur for h in by_max[v]):
                yield from rec(v + 1)
            cur.discard(v)

        yield from rec(0)


def max_codegrees(h: UniformHypergraph) -> dict[int, dict[int, int]]:
    """d^{(j)}(v) for j = 2..r, as {j: {v: value}} (absent means 0)."""
    counts: dict[int, Counter] = {j: Counter() for j in range(2, h.r + 1)}
    for e in h.hyperedges:
        for j in range(2, h.r + 1):
            for sig in itertools.combinations(sorted(e), j):
                counts[j][sig] += 1
    out: dict[int, dict[int, int]] = {}
    for j, c in counts.items():
        best: dict[int, int] = {}
        for sig, d in c.items():
            for v in sig:
                if d > best.get(v, 0):
                    best[v] = d
        out[j] = best
    return out


def codegree_delta(h: UniformHypergraph, tau) -> Fraction:
    """(1/e(H)) sum_{j=2}^r tau^{-(j-1)} sum_v d^{(j)}(v), exactly."""
    tau = Fraction(tau)
    if h.e == 0:
        raise EmptyHypergraph("no hyperedges")
    if tau <= 0:
        raise DomainError("tau must be positive")
    d = max_codegrees(h)
    total = sum(Fraction(sum(d[j].values())) / tau ** (j - 1) for j in d)
    return total / h.e


def tau_for(h: UniformHypergraph, delta, denominator: int = 64) -> Fraction:
    """A small tau (a multiple of 1/denominator) with codegree_delta <= delta."""
    delta = Fraction(delta)
    lo, hi = 0, 1
    while codegree_delta(h, Fraction(hi, denominator)) > delta:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if codegree_delta(h, Fraction(mid, denominator)) > delta:
            lo = mid
        else:
            hi = mid
    return Fraction(hi, denominator)


# ---------------------------------------------------------------------------
# container algorithm


class _Scythe:
    """Max-degree fingerprinting.  ``run(oracle)`` asks membership only of
    the vertices it picks, so replaying with oracle = T gives f(T)."""

    def __init__(self, h: UniformHypergraph, delta: Fraction):
        self.h = h
        self.delta = delta
        self.limit = (1 - delta) * h.e
        self.incident: dict[int, list[frozenset[int]]] = {v: [] for v in range(h.N)}
        for e in h.hyperedges:
            for v in e:
                self.incident[v].append(e)

    def _done(self, alive: set[int]) -> bool:
        return self.h.induced_count(alive) <= self.limit

    def _pick(self, T: set[int], A: set[int]) -> int:
        alive = T | A
        return min(A, key=lambda v: (-sum(1 for e in self.incident[v] if e <= alive), v))

    def _after_yes(self, T: set[int], A: set[int], v: int) -> None:
        A.discard(v)
        T.add(v)
        dead = {u for u in A for e in self.incident[u] if e - {u} <= T}
        A -= dead

    def run(self, member: Callable[[int], bool]) -> tuple[frozenset[int], frozenset[int]]:
        T: set[int] = set()
        A: set[int] = set(range(self.h.N))
        while A and not self._done(T | A):
            v = self._pick(T, A)
            if member(v):
                self._after_yes(T, A, v)
            else:
                A.discard(v)
        return frozenset(T), frozenset(T | A)

    def tree(self) -> dict[frozenset[int], frozenset[int]]:
        """Every reachable fingerprint and its container (the whole decision tree)."""
        out: dict[frozenset[int], frozenset[int]] = {}
        stack = [(set(), set(range(self.h.N)))]
        while stack:
            T, A = stack.pop()
            if not A or self._done(T | A):
                out[frozenset(T)] = frozenset(T | A)
                continue
            v = self._pick(T, A)
            T2, A2 = set(T), set(A)
            self._after_yes(T2, A2, v)
            stack.append((T2, A2))
            A3 = set(A)
            A3.discard(v)
            stack.append((set(T), A3))
        return out


@dataclass
class CoverReport:
    checked: int
    uncovered: list
    max_fingerprint: int
    fingerprint_bound: Fraction
    loss_ok: bool
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return not self.uncovered and self.loss_ok and self.max_fingerprint <= self.fingerprint_bound


@dataclass
class ContainerSet:
    h: UniformHypergraph
    tau: Fraction
    delta: Fraction
    fingerprints: dict[frozenset[int], frozenset[int]]
    delta_value: Fraction | None = None

    def __post_init__(self):
        self._scythe = _Scythe(self.h, self.delta)

    @property
    def containers(self) -> list[frozenset[int]]:
        return sorted(set(self.fingerprints.values()), key=lambda c: (len(c), sorted(c)))

    @property
    def fingerprint_bound(self) -> Fraction:
        return self.tau * self.h.N / self.delta

    def fingerprint(self, I) -> frozenset[int]:
        I = frozenset(I)
        return self._scythe.run(I.__contains__)[0]

    def f(self, T) -> frozenset[int]:
        T = frozenset(T)
        return self._scythe.run(T.__contains__)[1]

    def loss_ok(self) -> bool:
        lim = (1 - self.delta) * self.h.e
        return all(self.h.induced_count(c) <= lim for c in self.containers)

    def verify(self, sample: int | None = None, rng=None) -> CoverReport:
        """Coverage of independent sets: all of them when N <= 20 (and no
        ``sample``), else ``sample`` random independent sets."""
        exhaustive = sample is None and self.h.N <= 20
        if exhaustive:
            sets = self.h.independent_sets()
        else:
            if rng is None:
                raise DomainError("sampling needs an rng")
            sets = (_random_independent(self.h, rng) for _ in range(sample or 100))
        bad = []
        checked = 0
        for I in sets:
            checked += 1
            T = self.fingerprint(I)
            C = self.f(T)
            if not (T <= I <= C) or self.fingerprints.get(T, C) != C:
                bad.append(I)
        return CoverReport(
            checked,
            bad,
            max((len(t) for t in self.fingerprints), default=0),
            self.fingerprint_bound,
            self.loss_ok(),
            exhaustive,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.h.N,
                "r": self.h.r,
                "tau": str(self.tau),
                "delta": str(self.delta),
                "fingerprints": [[sorted(t), sorted(c)] for t, c in sorted(
                    self.fingerprints.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))],
            }
        )


def _random_independent(h: UniformHypergraph, rng) -> frozenset[int]:
    order = list(range(h.N))
    rng.shuffle(order)
    cur: set[int] = set()
    keep = rng.random()
    for v in order:
        if rng.random() < keep:
            cur.add(v)
            if not h.is_independent(cur):
                cur.discard(v)
    return frozenset(cur)


def build_containers(h: UniformHypergraph, tau, delta, enumerate_tree: bool | None = None) -> ContainerSet:
    """Containers from max-degree fingerprints.

    Every independent set I has a fingerprint T inside I with I inside f(T),
    and each container spans at most (1 - delta) e(H) hyperedges.  The whole
    decision tree is enumerated when N <= 20 (or when asked).
    """
    tau, delta = Fraction(tau), Fraction(delta)
    if not (0 < delta <= 1):
        raise DomainError("delta must lie in (0, 1]")
    if h.e == 0:
        full = frozenset(range(h.N))
        return ContainerSet(h, tau, delta, {frozenset(): full}, Fraction(0))
    value = codegree_delta(h, tau)
    if value > delta:
        warnings.warn(f"delta(H, tau) = {value} exceeds delta = {delta}", stacklevel=2)
    cs = ContainerSet(h, tau, delta, {}, value)
    if enumerate_tree if enumerate_tree is not None else h.N <= 20:
        cs.fingerprints = cs._scythe.tree()
    return cs


# ---------------------------------------------------------------------------
# iteration over graphs


Edge = tuple[int, int]


@dataclass
class IterationRecord:
    """One F-free graph I pushed through the rounds: fingerprints T_j, the
    graphs G_j and the per-round scales."""

    n: int
    T: list[frozenset[Edge]]
    sizes: list[int]
    final: frozenset[Edge]
    stop: str
    alpha: Fraction
    mu_ok: list[bool] = field(default_factory=list)
    eps_measured: list[float] = field(default_factory=list)

    @property
    def g(self) -> tuple[frozenset[Edge], ...]:
        return tuple(self.T)

    @property
    def s(self) -> int:
        return sum(len(t) for t in self.T)

    def sandwich(self, I) -> bool:
        I = frozenset(tuple(sorted(e)) for e in I)
        gi = frozenset().union(*self.T) if self.T else frozenset()
        return gi <= I <= gi | self.final

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "T": [sorted(t) for t in self.T],
            "sizes": self.sizes,
            "final_edges": len(self.final),
            "stop": self.stop,
            "mu_ok": self.mu_ok,
            "eps": self.eps_measured,
        }


class ContainerIteration:
    """g and h maps: start from K_n, take containers of the copy hypergraph
    on E(G_j), set G_{j+1} = f(T_{j+1}) minus T_{j+1}, and stop once
    e(G_m) <= k_target n^alpha.

    ``source(graph_edges, n)`` returns the copies (each a list of edges) found
    in the graph; ``delta`` is the container loss and ``eps`` the graph-level
    loss used in the mu scale.  ``v_F``, ``e_F`` and ``alpha`` describe F.
    """

    def __init__(
        self,
        n: int,
        source: Callable,
        k_target,
        eps,
        alpha,
        v_F: int,
        e_F: int,
        delta=Fraction(1, 2),
        max_rounds: int = 500,
    ):
        self.n = n
        self.source = source
        self.k_target = Fraction(k_target)
        self.eps = Fraction(eps)
        self.alpha = Fraction(alpha)
        self.v_F, self.e_F = v_F, e_F
        self.delta = Fraction(delta)
        self.max_rounds = max_rounds
        self._cache: dict[frozenset[Edge], tuple] = {}
        self.limit = Alg.of(self.k_target) * Alg.power(n, self.alpha)

    def _exp_beta(self) -> Fraction:
        return self.alpha - 2 + Fraction(self.v_F - 2, self.e_F - 1)

    def tau(self, e_graph: int) -> Fraction:
        """1/tau = delta^4 min{k^{1/(2-alpha)}, k n^{beta}} with k = e(G)/n^alpha."""
        k = Alg.of(e_graph) / Alg.power(self.n, self.alpha)
        a1 = k ** (1 / (2 - self.alpha))
        a2 = k * Alg.power(self.n, self._exp_beta())
        lo = a1 if a1 <= a2 else a2
        inv = Alg.of(self.delta ** 4) * lo
        return Fraction(1) / Fraction(float(inv)).limit_denominator(10 ** 9)

    def mu(self, e_graph: int) -> Alg:
        k = Alg.of(e_graph) / Alg.power(self.n, self.alpha)
        a1 = k ** (-(self.alpha - 1) / (2 - self.alpha))
        a2 = Alg.power(self.n, -self._exp_beta())
        return Alg.of(1 / self.eps) * (a1 if a1 >= a2 else a2)

    def _round(self, G: frozenset[Edge]):
        if G not in self._cache:
            edges = sorted(G)
            index = {e: i for i, e in enumerate(edges)}
            copies = self.source(edges, self.n)
            hyper = [frozenset(index[tuple(sorted(e))] for e in c) for c in copies]
            if not hyper:
                self._cache[G] = (edges, None)
            else:
                h = UniformHypergraph.from_edges(len(edges), self.e_F, hyper)
                # the asymptotic tau can leave delta(H, tau) above delta at
                # desk scale; fall back to the smallest grid tau that works
                tau = self.tau(len(edges))
                if codegree_delta(h, tau) > self.delta:
                    tau = max(tau, tau_for(h, self.delta))
                cs = build_containers(h, tau, self.delta, enumerate_tree=False)
                self._cache[G] = (edges, cs)
        return self._cache[G]

    def complete(self) -> frozenset[Edge]:
        return frozenset(itertools.combinations(range(self.n), 2))

    def g(self, I) -> IterationRecord:
        I = frozenset(tuple(sorted(e)) for e in I)
        G = self.complete()
        Ts: list[frozenset[Edge]] = []
        sizes = [len(G)]
        stop = "target"
        eps_m: list[float] = []
        while Alg.of(len(G)) > self.limit:
            if len(Ts) >= self.max_rounds:
                stop = "max_rounds"
                break
            edges, cs = self._round(G)
            if cs is None:
                stop = "no copies"
                break
            local = frozenset(i for i, e in enumerate(edges) if e in I)
            T = cs.fingerprint(local)
            C = cs.f(T)
            Tg = frozenset(edges[i] for i in T)
            G2 = frozenset(edges[i] for i in C) - Tg
            Ts.append(Tg)
            eps_m.append(1 - len(G2) / len(G))
            G = G2
            sizes.append(len(G))
        rec = IterationRecord(self.n, Ts, sizes, G, stop, self.alpha, eps_measured=eps_m)
        m = len(Ts)
        # e(T_{m-j}) <= mu(j) n^alpha with e(G_{m-j}) = k(j) n^alpha
        for j in range(1, m + 1):
            bound = self.mu(sizes[m - j]) * Alg.power(self.n, self.alpha)
            rec.mu_ok.append(not Ts[m - j] or Alg.of(len(Ts[m - j])) <= bound)
        return rec

    def h(self, S: Iterable[Iterable[Edge]]) -> frozenset[Edge]:
        """Replay the rounds from the fingerprints alone."""
        G = self.complete()
        for T in S:
            T = frozenset(tuple(sorted(e)) for e in T)
            edges, cs = self._round(G)
            if cs is None:
                break
            index = {e: i for i, e in enumerate(edges)}
            C = cs.f(frozenset(index[e] for e in T))
            G = frozenset(edges[i] for i in C) - T
        return G

    def round_bound(self) -> float:
        """log(e(K_n) / (k_target n^alpha)) / log(1 / (1 - eps)) + 1."""
        ratio = float(Alg.of(math.comb(self.n, 2)) / self.limit)
        if ratio <= 1:
            return 1.0
        return math.log(ratio) / -math.log(1 - float(self.eps)) + 1


def iterate_containers(
    n: int,
    source: Callable,
    k_target,
    eps,
    graphs: Iterable,
    alpha,
    v_F: int,
    e_F: int,
    delta=Fraction(1, 2),
) -> tuple[list[IterationRecord], ContainerIteration]:
    """Records for every F-free graph in ``graphs`` (each an edge iterable)."""
    it = ContainerIteration(n, source, k_target, eps, alpha, v_F, e_F, delta)
    return [it.g(I) for I in graphs], it


# ---------------------------------------------------------------------------
# union bound


@dataclass
class UnionBound:
    p: Fraction
    m: int
    bound: Fraction
    terms: dict[int, Fraction]

    @property
    def below_one(self) -> bool:
        return self.bound < 1


def gnp_upper_bound(counts: dict[int, int], p, m: int, container_edges: int) -> UnionBound:
    """sum over S of binom(K, m - e(S)) p^m, with |S_s| = counts[s] colored
    graphs of s edges and K = kn^alpha the container size."""
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise DomainError("p must lie in [0, 1]")
    terms: dict[int, Fraction] = {}
    pm = p ** m
    for s, c in sorted(counts.items()):
        need = m - s
        comb = math.comb(container_edges, need) if need >= 0 else 0
        terms[s] = c * comb * pm
    return UnionBound(p, m, sum(terms.values(), Fraction(0)), terms)


def record_counts(records: Iterable[IterationRecord]) -> tuple[dict[int, int], int]:
    """Distinct fingerprint tuples by total size, and the largest final graph."""
    seen: dict[tuple, int] = {}
    K = 0
    for r in records:
        key = tuple(tuple(sorted(t)) for t in r.T)
        seen[key] = r.s
        K = max(K, len(r.final))
    return dict(Counter(seen.values())), K


def formula_cap(s: int, n: int, k, alpha, C=1) -> float:
    """log of (C n^alpha / s)^{s/(alpha-1)} exp(C k^{-(alpha-1)/(2-alpha)} n^alpha)."""
    alpha = float(alpha)
    na = n ** alpha
    first = 0.0 if s == 0 else s / (alpha - 1) * math.log(C * na / s)
    return first + C * float(k) ** (-(alpha - 1) / (2 - alpha)) * na


def bound_rows(counts, ps, ms, container_edges) -> list[tuple[str, int, str]]:
    rows = []
    for p in ps:
        for m in ms:
            ub = gnp_upper_bound(counts, p, m, container_edges)
            rows.append((str(Fraction(p)), m, f"{float(ub.bound):.6g}"))
    return rows
