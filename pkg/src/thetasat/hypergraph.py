"""G-hypergraphs, codegree functions, goodness, link sets and the
signature-level bound checker."""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import DomainError, InvalidAssignment
from .exact import UNBOUNDED, Alg, ceil_log2, is_unbounded
from .graph_core import U, V, Assignment, Graph, ThetaPattern, is_valid

FAMILIES = ("forest", "sb", "st", "t", "prime")

# ---------------------------------------------------------------------------
# codegree functions


@dataclass(frozen=True)
class CodegreeParams:
    """Parameters selecting one codegree function.

    ``k`` may be an int, a Fraction or an :class:`Alg` (``e(G)/n^{1+1/b}`` is
    usually irrational).
    """

    a: int
    b: int
    k: object
    n: int
    delta: Fraction
    family: str
    s: int = 0
    t: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.a < 2 or self.b < 2:
            raise DomainError("a, b >= 2 required")
        if self.n < 1:
            raise DomainError("n >= 1 required")
        d = Fraction(self.delta)
        if d <= 0:
            raise DomainError("delta must be positive")
        object.__setattr__(self, "delta", d)
        k = self.k if isinstance(self.k, Alg) else Fraction(self.k)
        if not isinstance(k, Alg) and k <= 0:
            raise DomainError("k must be positive")
        object.__setattr__(self, "k", k)
        t = self.b if self.t is None else self.t
        object.__setattr__(self, "t", t)
        if not (2 <= t <= self.b):
            raise DomainError(f"t={t} outside [2, b]")
        if not (0 <= self.s <= s_max(self.n)):
            raise DomainError(f"s={self.s} outside [0, {s_max(self.n)}]")
        if self.family == "st" and t == self.b:
            raise DomainError("the (s,t) family needs t < b; use family 'sb'")

    def with_(self, **kw) -> "CodegreeParams":
        return replace(self, **kw)


def s_max(n: int) -> int:
    """Largest s index: ceil(3 log2 n), computed exactly."""
    if n <= 1:
        return 0
    # smallest integer x with 2^x >= n^3
    return ceil_log2(n ** 3)


def f_set(p: ThetaPattern, t: int) -> frozenset[int]:
    """F_t = {w_i^j : t <= i < b, i - t even}."""
    return frozenset(
        p.w(i, j) for i in range(t, p.b) if (i - t) % 2 == 0 for j in range(1, p.a + 1)
    )


@dataclass(frozen=True)
class PatternSubsetSignature:
    size: int
    e: int
    has_u: bool
    has_v: bool
    has_wlast: bool
    f: int
    g: int
    p: int

    @property
    def forest(self) -> bool:
        return not (self.has_u and self.has_v and self.complete_paths >= 2)

    # number of complete u-v paths regardless of path-completeness of nu
    complete_paths: int = 0

    def h(self, t: int, b: int) -> int:
        return 2 * t + self.f - b - 2


def signature_of(p: ThetaPattern, nu: Iterable[int], t: int) -> PatternSubsetSignature:
    s = frozenset(nu)
    if not (2 <= t <= p.b):
        raise DomainError(f"t={t} outside [2, b]")
    ft = f_set(p, t)
    f = len(s & ft)
    wlast = any(p.w(p.b - 1, j) in s for j in range(1, p.a + 1))
    hu, hv = U in s, V in s
    full = [all(x in s for x in path[1:-1]) for path in p.paths]
    complete = sum(full)
    touched = sum(1 for path in p.paths if any(x in s for x in path[1:-1]))
    path_complete = hu and hv and touched == complete
    if wlast:
        g = f if (p.b - t) % 2 == 0 else f - 1
    else:
        g = 0
    return PatternSubsetSignature(
        size=len(s),
        e=p.induced_edge_count(s),
        has_u=hu,
        has_v=hv,
        has_wlast=wlast,
        f=f,
        g=g,
        p=complete if path_complete else 0,
        complete_paths=complete if (hu and hv) else 0,
    )


def _ceil(x: Alg) -> int:
    return x.ceil()


class Codegree:
    """Callable codegree function with a per-subset cache."""

    def __init__(self, params: CodegreeParams, pattern: ThetaPattern | None = None):
        self.params = params
        self.pattern = pattern or ThetaPattern(params.a, params.b)
        self._cache: dict[frozenset[int], object] = {}

    def __call__(self, nu: Iterable[int]):
        key = frozenset(nu)
        if key not in self._cache:
            self._cache[key] = evaluate_codegree(self.params, key, self.pattern)
        return self._cache[key]


def _top(P: CodegreeParams) -> Alg:
    """k^{ab} n^2."""
    return Alg.of(P.k) ** (P.a * P.b) * Alg.power(P.n, 2)


def _forest_value(P: CodegreeParams, e: int) -> Alg:
    k, n, b, d = Alg.of(P.k), P.n, P.b, P.delta
    den = d * k * Alg.power(n, 1 + Fraction(1, b)) * (d * k ** Fraction(b, b - 1)) ** (e - 1)
    return _top(P) / den


def _sb_value(P: CodegreeParams, size: int, s: int) -> Alg:
    k, n, b, d = Alg.of(P.k), P.n, P.b, P.delta
    den = (
        Alg.power(2, -s)
        * Alg.power(n, 2)
        * Alg.power(d, size)
        * (Alg.power(2, Fraction(2 * s, 3)) * k ** b) ** Fraction(size - 2, b - 1)
    )
    return _top(P) / den


def _st_value(P: CodegreeParams, size: int, f: int, s: int, t: int) -> Alg:
    k, n, b, d = Alg.of(P.k), P.n, P.b, P.delta
    two = Alg.power(2, Fraction(2 * s, 3))
    den = (
        Alg.power(2, -2 * s)
        * k ** Fraction(2 * b - 2 * t + 1, b - 1)
        * Alg.power(n, Fraction(2 * t - 1, b))
        * Alg.power(d, size)
        * (two * k * Alg.power(n, Fraction(1, b))) ** f
        * (two * k ** Fraction(b, b - 1)) ** (size - f - 2)
    )
    return _top(P) / den


def _t_value(P: CodegreeParams, size: int, g: int) -> Alg:
    k, n, b, d = Alg.of(P.k), P.n, P.b, P.delta
    den = (
        k
        * Alg.power(n, 1 + Fraction(1, b))
        * (k * Alg.power(n, Fraction(1, b))) ** g
        * (k ** Fraction(b, b - 1)) ** (size - g - 3)
        * Alg.power(d, size)
    )
    return _top(P) / den


def evaluate_codegree(params: CodegreeParams, nu: Iterable[int], pattern: ThetaPattern | None = None):
    """Exact ceiling of the selected codegree function, or UNBOUNDED."""
    P = params
    p = pattern or ThetaPattern(P.a, P.b)
    nu = frozenset(nu)
    if any(not (0 <= x < p.n_vertices) for x in nu):
        raise DomainError("pattern vertex out of range")
    fam = P.family
    if fam == "forest":
        e = p.induced_edge_count(nu)
        if e >= 1 and p.induces_forest(nu):
            return _ceil(_forest_value(P, e))
        return UNBOUNDED
    if fam == "sb":
        if P.t != P.b:
            raise DomainError("the (s,b) family has t = b")
        if U in nu and V in nu:
            return _ceil(_sb_value(P, len(nu), P.s))
        return UNBOUNDED
    if fam == "st":
        if U in nu and V in nu:
            f = len(nu & f_set(p, P.t))
            return _ceil(_st_value(P, len(nu), f, P.s, P.t))
        return UNBOUNDED
    if fam == "t":
        return _t_eval(P, p, nu)
    # prime
    if p.induces_forest(nu):
        return evaluate_codegree(P.with_(family="forest"), nu, p)
    dt = _t_eval(P, p, nu)
    if P.t == P.b:
        d0 = evaluate_codegree(P.with_(family="sb", s=0), nu, p)
    else:
        d0 = evaluate_codegree(P.with_(family="st", s=0), nu, p)
    other = UNBOUNDED if is_unbounded(d0) else 20 * (d0 + ceil_log2(P.n))
    return min(dt, other)


def _t_eval(P: CodegreeParams, p: ThetaPattern, nu: frozenset[int]):
    if P.t == P.b:
        return UNBOUNDED
    sig = signature_of(p, nu, P.t)
    if not (sig.has_u and sig.has_v and sig.has_wlast):
        return UNBOUNDED
    return _ceil(_t_value(P, sig.size, sig.g))


# ---------------------------------------------------------------------------
# G-hypergraphs


class GHypergraph:
    """Set of full-size valid assignments with a subset-degree index.

    Subsets of size up to ``cap`` are counted in the index; larger ones are
    counted by scanning.
    """

    def __init__(self, pattern: ThetaPattern, host: Graph, cap: int = 6):
        self.pattern = pattern
        self.host = host
        self.cap = cap
        self._edges: list[Assignment] = []
        self._set: set[Assignment] = set()
        self._index: Counter = Counter()

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Assignment]:
        return iter(self._edges)

    def __contains__(self, h) -> bool:
        return Assignment(h) in self._set

    @property
    def hyperedges(self) -> list[Assignment]:
        return list(self._edges)

    def add(self, h: Iterable, check: bool = True) -> Assignment:
        h = Assignment(h)
        if check:
            if len(h) != self.pattern.n_vertices or h.theta != frozenset(self.pattern.vertices):
                raise InvalidAssignment("hyperedges must assign every pattern vertex")
            if not is_valid(self.pattern, self.host, h):
                raise InvalidAssignment(f"invalid hyperedge {sorted(h)}")
        if h in self._set:
            raise DomainError("duplicate hyperedge")
        self._edges.append(h)
        self._set.add(h)
        pairs = sorted(h)
        for r in range(0, min(self.cap, len(pairs)) + 1):
            for sub in itertools.combinations(pairs, r):
                self._index[frozenset(sub)] += 1
        return h

    def degree(self, chi: Iterable, check: bool = True) -> int:
        chi = frozenset(chi)
        if check and not is_valid(self.pattern, self.host, chi):
            raise InvalidAssignment(f"invalid assignment {sorted(chi)}")
        if len(chi) <= self.cap:
            return self._index.get(chi, 0)
        return sum(1 for h in self._edges if chi <= h)

    def indexed_sets(self, max_size: int | None = None) -> Iterator[tuple[frozenset, int]]:
        lim = self.cap if max_size is None else min(max_size, self.cap)
        for key, cnt in self._index.items():
            if len(key) <= lim:
                yield key, cnt

    def containing(self, chi: Iterable) -> Iterator[Assignment]:
        chi = frozenset(chi)
        return (h for h in self._edges if chi <= h)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(sorted(h)) + "\n" for h in self._edges)

    @classmethod
    def from_jsonl(cls, text: str, pattern: ThetaPattern, host: Graph, cap: int = 6) -> "GHypergraph":
        h = cls(pattern, host, cap)
        for line in text.splitlines():
            if line.strip():
                h.add(Assignment(tuple(p) for p in json.loads(line)))
        return h


def degree(h: GHypergraph, chi: Iterable) -> int:
    return h.degree(chi)


@dataclass
class GoodnessReport:
    good: bool
    checked: int
    violations: list = field(default_factory=list)


def _as_function(D, pattern: ThetaPattern) -> Callable:
    if isinstance(D, CodegreeParams):
        return Codegree(D, pattern)
    return D


def is_good(h: GHypergraph, D, cap: int | None = None, only: Iterable | None = None) -> GoodnessReport:
    """Check deg(chi) <= D(chi_theta) for every chi inside some hyperedge with
    |chi| <= cap.  ``only`` restricts the scan to the given hyperedges' subsets
    (an incremental check after an insertion)."""
    fn = _as_function(D, h.pattern)
    cap = h.pattern.n_vertices if cap is None else cap
    viol = []
    checked = 0
    if only is None and cap <= h.cap:
        items = h.indexed_sets(cap)
    else:
        items = _subsets_of(h, only if only is not None else h, cap)
    for chi, cnt in items:
        checked += 1
        bound = fn(frozenset(w for w, _ in chi))
        if not is_unbounded(bound) and cnt > bound:
            viol.append((Assignment(chi), cnt, bound))
    return GoodnessReport(not viol, checked, viol)


def _subsets_of(h: GHypergraph, edges, cap: int):
    seen = set()
    for e in edges:
        pairs = sorted(e)
        for r in range(0, min(cap, len(pairs)) + 1):
            for sub in itertools.combinations(pairs, r):
                key = frozenset(sub)
                if key not in seen:
                    seen.add(key)
                    yield key, h.degree(key, check=False)


def saturated(h: GHypergraph, D, chi: Iterable) -> bool:
    """chi in F(H, D): valid with deg(chi) >= D(chi_theta)."""
    chi = frozenset(chi)
    fn = _as_function(D, h.pattern)
    bound = fn(frozenset(w for w, _ in chi))
    if is_unbounded(bound):
        return False
    return h.degree(chi, check=False) >= bound


def link_set(h: GHypergraph, D, chi: Iterable, nu: Iterable[int]) -> set[Assignment]:
    """J(chi; nu): all gamma with gamma_theta = nu and chi + gamma saturated."""
    chi = Assignment(chi)
    nu = frozenset(nu)
    if chi.theta & nu:
        raise DomainError("nu overlaps chi_theta")
    fn = _as_function(D, h.pattern)
    bound = fn(chi.theta | nu)
    if is_unbounded(bound):
        return set()
    if bound <= 0:
        raise DomainError("codegree thresholds must be positive")
    out = set()
    seen = set()
    for e in h.containing(chi):
        gamma = Assignment(pr for pr in e if pr[0] in nu)
        if gamma in seen:
            continue
        seen.add(gamma)
        if h.degree(chi | gamma, check=False) >= bound:
            out.add(gamma)
    return out


def link_bound(pattern: ThetaPattern, d_chi, d_union) -> Fraction | float:
    """Upper bound 2^{v} D(chi_theta) / D(chi_theta + nu) on a link set."""
    if is_unbounded(d_union):
        return 0
    if is_unbounded(d_chi):
        return UNBOUNDED
    return Fraction(2 ** pattern.n_vertices * d_chi, d_union)


# ---------------------------------------------------------------------------
# signature-level bound checker
#
# Every quantity is k^X n^Y times a constant.  Writing k = n^x with
# 0 <= x <= 1 - 1/b (the cone k >= k0, n^{1-1/b} >= k), a ratio stays bounded
# as n grows iff its n-exponent is <= 0 for every x in that interval.  Both
# sides are piecewise linear in x, so it suffices to test the endpoints and
# every breakpoint.


@dataclass(frozen=True)
class Lin:
    """c0 + c1*x as exact rationals."""

    c0: Fraction
    c1: Fraction

    def __call__(self, x: Fraction) -> Fraction:
        return self.c0 + self.c1 * x

    def __add__(self, o):
        return Lin(self.c0 + o.c0, self.c1 + o.c1)

    def __sub__(self, o):
        return Lin(self.c0 - o.c0, self.c1 - o.c1)

    def scale(self, c) -> "Lin":
        return Lin(self.c0 * c, self.c1 * c)


def _L(c0, c1) -> Lin:
    return Lin(Fraction(c0), Fraction(c1))


def _exp_top(a, b) -> Lin:  # k^{ab} n^2
    return _L(2, a * b)


def exp_rhs(a: int, b: int, e: int) -> tuple[Lin, Lin, int]:
    """(base, min-branch-1, min-branch-2, ...) pieces of the target bound
    k^{ab} n^2 / (k n^{1+1/b} min{k^{b/(b-1)}, k n^{(b-1)/(b(ab-1))}}^{e-1})."""
    base = _exp_top(a, b) - _L(1 + Fraction(1, b), 1)
    return base, _L(0, Fraction(b, b - 1)), _L(Fraction(b - 1, b * (a * b - 1)), 1)


def _exp_forest(a, b, e) -> Lin:
    return _exp_top(a, b) - _L(1 + Fraction(1, b), 1) - _L(0, Fraction(b, b - 1)).scale(e - 1)


def _exp_sb(a, b, size) -> Lin:
    return _exp_top(a, b) - _L(2, 0) - _L(0, b).scale(Fraction(size - 2, b - 1))


def _exp_st(a, b, t, size, f) -> Lin:
    return (
        _exp_top(a, b)
        - _L(Fraction(2 * t - 1, b), Fraction(2 * b - 2 * t + 1, b - 1))
        - _L(Fraction(1, b), 1).scale(f)
        - _L(0, Fraction(b, b - 1)).scale(size - f - 2)
    )


def _exp_t(a, b, size, g) -> Lin:
    return (
        _exp_top(a, b)
        - _L(1 + Fraction(1, b), 1)
        - _L(Fraction(1, b), 1).scale(g)
        - _L(0, Fraction(b, b - 1)).scale(size - g - 3)
    )


def _crossings(pieces: list[Lin], lo: Fraction, hi: Fraction) -> set[Fraction]:
    pts = {lo, hi}
    for p1, p2 in itertools.combinations(pieces, 2):
        if p1.c1 != p2.c1:
            x = (p2.c0 - p1.c0) / (p1.c1 - p2.c1)
            if lo < x < hi:
                pts.add(x)
    return pts


@dataclass(frozen=True)
class SigKey:
    t: int
    size: int
    e: int
    f: int
    g: int
    p: int
    forest: bool
    has_u: bool
    has_v: bool
    has_wlast: bool


@dataclass
class SignatureVerdict:
    key: SigKey
    feasible: bool
    worst_exponent: Fraction
    worst_x: Fraction
    grid_c: float | None = None
    route: str = "direct"


def _d_prime_pieces(a, b, key: SigKey):
    """Linear pieces of D'_t's exponent: (forest piece) or (D_t or None, D_0t)."""
    if key.forest:
        return _exp_forest(a, b, key.e), None
    d0 = _exp_sb(a, b, key.size) if key.t == b else _exp_st(a, b, key.t, key.size, key.f)
    dt = _exp_t(a, b, key.size, key.g) if (key.t < b and key.has_wlast) else None
    return d0, dt


def _verdict_direct(a, b, key: SigKey) -> tuple[Fraction, Fraction, bool]:
    """max over x of exponent(D'_t) - exponent(RHS), its argmax, and whether
    a zero gap there comes from the log n term (which makes the ratio grow)."""
    base, m1, m2 = exp_rhs(a, b, key.e)
    lo, hi = Fraction(0), Fraction(b - 1, b)
    zero = _L(0, 0)
    main, dt = _d_prime_pieces(a, b, key)
    pieces = [main, zero] + ([dt] if dt is not None else [])
    xs = sorted(_crossings(pieces, lo, hi) | _crossings([m1, m2], lo, hi))
    worst, wx, log_tie = None, lo, False
    for x in xs:
        r = base(x) - (key.e - 1) * min(m1(x), m2(x))
        d = max(main(x), Fraction(0))
        # the additive log n only matters when D_{0,t} has exponent <= 0
        via_log = not key.forest and main(x) <= 0
        if dt is not None:
            dtx = max(dt(x), Fraction(0))
            if dtx <= d:
                d, via_log = dtx, False
        gap = d - r
        if worst is None or gap > worst:
            worst, wx, log_tie = gap, x, (gap == 0 and via_log)
        elif gap == worst and gap == 0 and via_log:
            log_tie = True
    return worst, wx, log_tie


def _verdict_proof(a, b, key: SigKey) -> tuple[Fraction, Fraction, bool]:
    """Sufficient-condition route: the D_t branch is compared against the
    k^{b/(b-1)} branch of the minimum only, as the case analysis for D_t does;
    the D_{0,t} branch against the full minimum."""
    if key.forest or key.t == b or not key.has_wlast:
        return _verdict_direct(a, b, key)
    t, size, e = key.t, key.size, key.e
    base, m1, m2 = exp_rhs(a, b, e)
    lo, hi = Fraction(0), Fraction(b - 1, b)
    dt = _exp_t(a, b, size, key.g)
    d0 = _exp_st(a, b, t, size, key.f)
    r1 = base - m1.scale(e - 1)
    r2 = base - m2.scale(e - 1)
    cands = [dt - r1, d0 - r1, d0 - r2, d0, dt, _L(0, 0), r1 - r2]
    xs = sorted(_crossings(cands, lo, hi))
    worst, wx = None, lo
    for x in xs:
        r = base(x) - (e - 1) * min(m1(x), m2(x))
        g1 = max(dt(x), Fraction(0)) - r1(x)
        g2 = max(d0(x), Fraction(0)) - r
        gap = min(g1, g2)
        if worst is None or gap > worst:
            worst, wx = gap, x
    return worst, wx, False


def _path_types(b: int, t: int):
    """Per-path contribution of each subset of the b-1 internal vertices when
    both hubs are present: (vertex count, edges, f count, complete)."""
    out = set()
    for mask in range(1 << (b - 1)):
        inc = [(mask >> (i - 1)) & 1 for i in range(1, b)]
        cnt = sum(inc)
        edges = sum(1 for i in range(b - 2) if inc[i] and inc[i + 1]) + inc[0] + inc[-1]
        f = sum(1 for i in range(t, b) if (i - t) % 2 == 0 and inc[i - 1])
        out.add((cnt, edges, f, cnt == b - 1))
    return sorted(out)


def enumerate_signatures(a: int, b: int, t: int) -> set[SigKey]:
    """Signatures that decide feasibility, without enumerating raw subsets.

    Forest signatures matter only through e, so one key per realisable e.
    For cycle-containing subsets (both hubs, >= 2 complete paths) D'_t
    depends on (|nu|, f) alone while the target bound decreases in e, so the
    key with the largest e for each (|nu|, f) dominates; a knapsack over the
    a paths finds it.  Path-complete keys are added so they can be reported
    by p.
    """
    keys: set[SigKey] = set()
    # the largest forest is one hub with every internal vertex: a(b-1) edges
    for e in range(1, a * (b - 1) + 1):
        keys.add(SigKey(t, 0, e, 0, 0, 0, True, False, False, False))

    types = _path_types(b, t)
    smax = a * (b - 1)
    fmax = a * (b - 1)
    neg = -1
    dp = np.full((smax + 1, fmax + 1, 3), neg, dtype=np.int64)
    dp[0, 0, 0] = 0
    for _ in range(a):
        nxt = np.full_like(dp, neg)
        for cnt, edges, f, full in types:
            src = dp[: smax + 1 - cnt, : fmax + 1 - f, :]
            shifted = np.where(src >= 0, src + edges, neg)
            if full:
                moved = np.full_like(shifted, neg)
                moved[:, :, 1] = shifted[:, :, 0]
                moved[:, :, 2] = np.maximum(shifted[:, :, 1], shifted[:, :, 2])
                shifted = moved
            view = nxt[cnt:, f:, :]
            np.maximum(view, shifted, out=view)
        dp = nxt
    sizes, fs = np.nonzero(dp[:, :, 2] >= 0)
    for sz, f in zip(sizes.tolist(), fs.tolist()):
        e = int(dp[sz, f, 2])
        if e >= a * b:
            continue
        g = f if (b - t) % 2 == 0 else f - 1
        keys.add(SigKey(t, sz + 2, e, f, g, 0, False, True, True, True))
    for p in range(2, a):
        keys.add(path_complete_signature(a, b, t, p))
    return keys


def _grid_c(a, b, key: SigKey, grid, delta) -> float:
    """max over the grid of log2(D'_t / RHS) in floats, exponentiated."""
    best = -math.inf
    for k, n in grid:
        lk, ln = math.log2(k), math.log2(n)
        lg = math.log2(delta)

        def val(lin_c0_c1, extra=0.0):
            return lin_c0_c1.c0 * ln + lin_c0_c1.c1 * lk + extra

        e, size = key.e, key.size
        base, m1, m2 = exp_rhs(a, b, e)
        rhs = val(base) - (e - 1) * min(val(m1), val(m2))
        if key.forest:
            d = val(_exp_forest(a, b, e), -e * lg)
            d = max(d, 0.0)
        else:
            if key.t == b:
                d0 = val(_exp_sb(a, b, size), -size * lg)
            else:
                d0 = val(_exp_st(a, b, key.t, size, key.f), -size * lg)
            alt = math.log2(20) + math.log2(2 ** min(max(d0, 0.0), 1000) + math.ceil(ln))
            if d0 > 1000:
                alt = math.log2(20) + d0
            d = alt
            if key.t < b and key.has_wlast:
                dt = max(val(_exp_t(a, b, size, key.g), -size * lg), 0.0)
                d = min(d, dt)
        best = max(best, d - rhs)
    return 2.0 ** best if best < 1000 else math.inf


@dataclass
class BoundReport:
    a: int
    b: int
    route: str
    verdicts: list[SignatureVerdict]

    @property
    def feasible(self) -> bool:
        return all(v.feasible for v in self.verdicts)

    def infeasible(self) -> list[SignatureVerdict]:
        return [v for v in self.verdicts if not v.feasible]

    def find(self, t: int, p: int) -> list[SignatureVerdict]:
        return [v for v in self.verdicts if v.key.t == t and v.key.p == p and not v.key.forest]


def default_grid(b: int, n_values=(2 ** 10, 2 ** 20, 2 ** 40), k_points=4) -> list[tuple[float, float]]:
    grid = []
    for n in n_values:
        kmax = n ** (1 - 1 / b)
        for i in range(k_points + 1):
            grid.append((2.0 ** (i / k_points * (1 - 1 / b) * (n.bit_length() - 1)), float(n)))
        assert grid[-1][0] <= kmax * (1 + 1e-9)
    return grid


def simplified_bound_check(
    a: int,
    b: int,
    delta=Fraction(3, 10),
    grid: list[tuple[float, float]] | None = None,
    route: str = "direct",
    ts: Iterable[int] | None = None,
    with_grid: bool = True,
) -> BoundReport:
    """Decide, per signature, whether D'_t(nu) <= C' k^{ab} n^2 /
    (k n^{1+1/b} min{k^{b/(b-1)}, k n^{(b-1)/(b(ab-1))}}^{e-1}) for a finite C'.

    ``route="direct"`` compares the functions exactly; ``route="proof"`` uses
    the weaker sufficient conditions from the case analysis (the D_t branch is
    only matched against the k^{b/(b-1)} branch).  ``grid`` lists (k, n) points
    for the reported finite-grid constant.
    """
    if b < 3:
        raise DomainError("the bound checker needs b >= 3")
    if route not in ("direct", "proof"):
        raise DomainError(f"unknown route {route!r}")
    if grid is None:
        grid = default_grid(b)
    for k, n in grid:
        if k > n ** (1 - 1 / b) * (1 + 1e-12) or k <= 0:
            raise DomainError(f"grid point k={k}, n={n} violates n^(1-1/b) >= k")
    fn = _verdict_direct if route == "direct" else _verdict_proof
    out = []
    for t in (range(2, b + 1) if ts is None else ts):
        for key in sorted(enumerate_signatures(a, b, t), key=lambda k: tuple(map(int, (k.size, k.e, k.f, k.g, k.p, k.forest, k.has_u, k.has_v, k.has_wlast)))):
            worst, wx, tie = fn(a, b, key)
            feasible = worst <= 0 and not tie
            c = _grid_c(a, b, key, grid, float(delta)) if with_grid else None
            out.append(SignatureVerdict(key, feasible, worst, wx, c, route))
    return BoundReport(a, b, route, out)


def check_signature(a: int, b: int, t: int, size: int, e: int, f: int, g: int, p: int,
                    route: str = "direct", forest: bool = False, has_wlast: bool = True) -> SignatureVerdict:
    key = SigKey(t, size, e, f, g, p, forest, True, True, has_wlast)
    fn = _verdict_direct if route == "direct" else _verdict_proof
    worst, wx, tie = fn(a, b, key)
    return SignatureVerdict(key, worst <= 0 and not tie, worst, wx, None, route)


def path_complete_signature(a: int, b: int, t: int, p: int) -> SigKey:
    """Signature of {u, v} plus p complete paths."""
    half = -(-(b - t) // 2)
    f = p * half
    g = (f if (b - t) % 2 == 0 else f - 1) if p > 0 else 0
    return SigKey(t, p * (b - 1) + 2, p * b, f, g, p, p < 2, True, True, p > 0)
