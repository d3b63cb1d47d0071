"""The supersaturation builder: (s,t)-compatibility, the two extension cases,
the driver over a family of G-hypergraphs, and the vertex-to-edge translation."""

from __future__ import annotations

import itertools
import logging
import time
from math import factorial
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import DomainError, EmptyWeight, Exhausted, Failure, InvalidAssignment
from .exact import Alg, is_unbounded
from .expansion import (
    EpsilonSchedule,
    ExpansionCertificate,
    ForestIndex,
    epsilon_schedule,
    refine_paths,
    x_set,
)
from .graph_core import U, V, Assignment, Graph, ThetaPattern, edge_image, is_valid, project
from .hypergraph import Codegree, CodegreeParams, GHypergraph, is_good, s_max
from .pruning import ScaleParams, min_degree_core, remove_saturated_edges, scale_index, scale_parameters, weighted_core

log = logging.getLogger("thetasat.supersat")

# ---------------------------------------------------------------------------
# the family of hypergraphs


class CollectionFamily:
    """H_{s,t} for every (s, t), with the unions H_t and H kept in step.

    Codegree functions are built once per family member and cached.
    """

    def __init__(self, pattern: ThetaPattern, host: Graph, k, delta, cap: int = 6):
        self.pattern = pattern
        self.host = host
        self.a, self.b = pattern.a, pattern.b
        self.n = host.n
        self.k = k
        self.delta = Fraction(delta)
        self.cap = cap
        self.s_max = s_max(self.n)
        self.union = GHypergraph(pattern, host, cap)
        self.by_t: dict[int, GHypergraph] = {}
        self.by_st: dict[tuple[int, int], GHypergraph] = {}
        self._D: dict[tuple, Codegree] = {}

    # codegree functions -------------------------------------------------------

    def params(self, family: str, s: int = 0, t: int | None = None) -> CodegreeParams:
        return CodegreeParams(self.a, self.b, self.k, self.n, self.delta, family, s, t)

    def D(self, family: str, s: int = 0, t: int | None = None) -> Codegree:
        t = self.b if t is None else t
        if family == "st" and t == self.b:
            family = "sb"
        key = (family, s, t)
        if key not in self._D:
            self._D[key] = Codegree(self.params(family, s, t), self.pattern)
        return self._D[key]

    # members -----------------------------------------------------------------

    def H_t(self, t: int) -> GHypergraph:
        if t not in self.by_t:
            self.by_t[t] = GHypergraph(self.pattern, self.host, self.cap)
        return self.by_t[t]

    def H_st(self, s: int, t: int) -> GHypergraph:
        if (s, t) not in self.by_st:
            self.by_st[(s, t)] = GHypergraph(self.pattern, self.host, self.cap)
        return self.by_st[(s, t)]

    def __len__(self) -> int:
        return len(self.union)

    def __contains__(self, h) -> bool:
        return h in self.union

    def insert(self, h: Assignment, s: int, t: int) -> None:
        if not (0 <= s <= self.s_max and 2 <= t <= self.b):
            raise DomainError(f"(s,t)=({s},{t}) out of range")
        if h in self.union:
            raise DomainError("hyperedge already present")
        self.union.add(h)
        self.H_t(t).add(h, check=False)
        self.H_st(s, t).add(h, check=False)

    def table(self) -> dict[str, int]:
        return {f"{s},{t}": len(h) for (s, t), h in sorted(self.by_st.items())}

    # goodness ----------------------------------------------------------------

    def goodness(self, cap: int | None = None, only=None) -> dict[str, list]:
        """Violations of the three goodness conditions, keyed by family."""
        cap = self.cap if cap is None else cap
        out: dict[str, list] = {}
        rep = is_good(self.union, self.D("forest"), cap, only)
        out["forest"] = rep.violations
        for t, h in self.by_t.items():
            if t < self.b:
                out[f"t={t}"] = is_good(h, self.D("t", 0, t), cap, only).violations
        for (s, t), h in self.by_st.items():
            out[f"s={s},t={t}"] = is_good(h, self.D("st", s, t), cap, only).violations
        return out


@dataclass
class Compatibility:
    ok: bool
    witness: Assignment | None = None
    family: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _degree(h: GHypergraph, chi: frozenset) -> int:
    return h.degree(chi, check=False)


def _saturated_in(fam: CollectionFamily, chi: frozenset, s: int, t: int, shortcut: bool):
    """Family name under which chi is saturated, or None."""
    theta = frozenset(w for w, _ in chi)
    # forest
    if not (shortcut and fam.pattern.induced_edge_count(theta) <= 1):
        bound = fam.D("forest")(theta)
        if not is_unbounded(bound) and _degree(fam.union, chi) >= bound:
            return "forest"
    if t < fam.b and t in fam.by_t:
        bound = fam.D("t", 0, t)(theta)
        if not is_unbounded(bound) and _degree(fam.by_t[t], chi) >= bound:
            return "t"
    if (s, t) in fam.by_st:
        bound = fam.D("st", s, t)(theta)
        if not is_unbounded(bound) and _degree(fam.by_st[(s, t)], chi) >= bound:
            return "st"
    return None


def _positive_subsets(fam: CollectionFamily, chi: frozenset, new: Iterable):
    """Subsets of chi containing a new pair that lie inside some hyperedge.

    Any other subset has degree 0 in every member, and thresholds are >= 1,
    so it cannot be saturated.
    """
    new = frozenset(new)
    seen: set[frozenset] = set()
    for p in new:
        for h in fam.union.containing((p,)):
            inter = sorted(h & chi)
            for r in range(1, len(inter) + 1):
                for sub in itertools.combinations(inter, r):
                    key = frozenset(sub)
                    if key & new and key not in seen:
                        seen.add(key)
                        yield key


def compatible(
    fam: CollectionFamily,
    chi: Iterable,
    s: int,
    t: int,
    new: Iterable | None = None,
    shortcut: bool = True,
) -> Compatibility:
    """chi is valid and none of its subsets is saturated for D_forest on H,
    D_t on H_t or D_{s,t} on H_{s,t}.

    ``new`` limits the scan to subsets containing one of the given pairs (the
    rest were checked when chi was smaller).  ``shortcut`` skips the forest
    test on subsets inducing at most one pattern edge, which cannot be
    saturated once saturated host edges have been pruned.
    """
    chi = frozenset(chi)
    if not (0 <= s <= fam.s_max and 2 <= t <= fam.b):
        raise DomainError(f"(s,t)=({s},{t}) out of range")
    if not is_valid(fam.pattern, fam.host, chi):
        return Compatibility(False, Assignment(chi), "valid")
    pool = chi if new is None else frozenset(new) & chi
    for sub in _positive_subsets(fam, chi, pool):
        which = _saturated_in(fam, sub, s, t, shortcut)
        if which:
            return Compatibility(False, Assignment(sub), which)
    return Compatibility(True)


# ---------------------------------------------------------------------------
# builder state and the two extension cases


@dataclass
class SupersatConfig:
    delta: Fraction = Fraction(3, 10)
    c: Fraction = Fraction(1, 2)
    k0: Fraction = Fraction(1)
    cap: int = 6
    fanout: int = 6
    node_budget: int = 20000
    max_hyperedges: int = 60
    max_seconds: float = 240.0
    shortcut: bool = True

    @classmethod
    def from_dict(cls, d: dict) -> "SupersatConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise DomainError(f"unknown config keys {sorted(extra)}")
        kw = dict(d)
        for key in ("delta", "c", "k0"):
            if key in kw:
                kw[key] = Fraction(str(kw[key]))
        cfg = cls(**kw)
        if cfg.delta <= 0 or not (0 < cfg.c <= 1):
            raise DomainError("delta must be positive and c in (0, 1]")
        return cfg

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "c": str(self.c),
            "k0": str(self.k0),
            "cap": self.cap,
            "fanout": self.fanout,
            "node_budget": self.node_budget,
            "max_hyperedges": self.max_hyperedges,
            "max_seconds": self.max_seconds,
            "shortcut": self.shortcut,
        }


@dataclass
class BuilderState:
    g: Graph
    g0: Graph
    gprime: Graph
    labels: tuple[int, ...]
    sp: ScaleParams
    cert: ExpansionCertificate
    x: int
    y: int | None = None
    chi: frozenset = frozenset()
    nodes: int = 0
    budget: int = 20000
    s: int | None = None
    shortcut: bool = True

    def host(self, z: int) -> int:
        """Original label of a vertex of G'."""
        return self.labels[z]


class _Budget(Exception):
    pass


def _tick(state: BuilderState) -> None:
    state.nodes += 1
    if state.nodes > state.budget:
        raise _Budget


def _joint_order(fam: CollectionFamily, state: BuilderState, cands: Iterable[int]) -> list[int]:
    ux = (U, state.host(state.x))
    return sorted(cands, key=lambda y: (fam.union.degree((ux, (V, state.host(y))), check=False), y))


def extend_case_b(state: BuilderState, fam: CollectionFamily):
    """t = b: x plays u, some y in the weighted core of B_b plays v, and the
    a paths are drawn from Q[x -> y]."""
    cert, sp, b = state.cert, state.sp, fam.b
    if cert.t != b:
        raise DomainError("certificate must have t = b")
    Bb = sorted(cert.layers[b])
    f = {y: len(cert.paths_to(y)) for y in Bb}
    try:
        Bp = weighted_core(Bb, f, b)
    except EmptyWeight:
        return Exhausted("empty weighted core", state.nodes)
    if not Bp:
        return Exhausted("empty weighted core", state.nodes)
    rp = scale_index(len(Bp), sp.m)
    s = min(2 * sp.r + rp, fam.s_max)
    state.s = s
    H = state.host
    x = state.x
    try:
        for y in _joint_order(fam, state, Bp):
            if y == x:
                continue
            state.y = y
            chi0 = frozenset({(U, H(x)), (V, H(y))})
            _tick(state)
            if not compatible(fam, chi0, s, b, shortcut=state.shortcut):
                continue
            paths = sorted(cert.paths_to(y))
            found = _pick_paths_b(fam, state, chi0, paths, s)
            if found is not None:
                return found, s, b
    except _Budget:
        return Exhausted("node budget", state.nodes)
    return Exhausted("no compatible extension", state.nodes)


def _pick_paths_b(fam, state, chi0, paths, s):
    p, a, b = fam.pattern, fam.a, fam.b
    H = state.host

    def rec(j, start, chi, used):
        if j > a:
            h = Assignment(chi)
            return h if h not in fam.union else None
        for idx in range(start, len(paths)):
            path = paths[idx]
            inner = path[1:b]
            if any(z in used for z in inner):
                continue
            new = frozenset((p.w(i, j), H(inner[i - 1])) for i in range(1, b))
            _tick(state)
            chi2 = chi | new
            if not compatible(fam, chi2, s, b, new=new, shortcut=state.shortcut):
                continue
            got = rec(j + 1, idx + 1, chi2, used | set(inner))
            if got is not None:
                return got
        return None

    return rec(1, 0, chi0, {state.x, state.y})


def extend_case_lt_b(state: BuilderState, fam: CollectionFamily):
    """t < b: y is drawn from B_t (b - t even) or B_{t-1} minus x (b - t odd);
    layers b-1 .. t are filled inward from y, alternating between B_{t-1} and
    B_t, and the last t vertices of each path come from Q[x -> z_t^j]."""
    cert, sp, p = state.cert, state.sp, fam.pattern
    t, b, a = cert.t, fam.b, fam.a
    if t >= b:
        raise DomainError("certificate must have t < b")
    s = sp.r if sp.r <= fam.s_max else fam.s_max
    state.s = s
    B = cert.layers
    H = state.host
    x = state.x
    pool = B[t] if (b - t) % 2 == 0 else B[t - 1] - {x}
    ends = {z for z in B[t] if cert.paths_to(z)}
    # outer layers try vertices off the x -> z_t paths (and off the ends) first,
    # so they do not use up what the path completion needs
    inner = {c for q in cert.paths for c in q[1:t]}
    scarce = inner | ends
    adj = state.gprime.adjacency

    # pick order: layers from b-1 down to t, and j = 1..a inside each layer
    slots = [(i, j) for i in range(b - 1, t - 1, -1) for j in range(1, a + 1)]

    def layer_of(i):
        return B[t - 1] if (i - t) % 2 == 1 else B[t]

    def rec_layers(k, chi, z, used):
        if k == len(slots):
            return rec_paths(1, chi, z, used)
        i, j = slots[k]
        prev = state.y if i == b - 1 else z[(i + 1, j)]
        avoid = inner if i == t else scarce
        cands = sorted((adj[prev] & layer_of(i)) - used, key=lambda c: (c in avoid, c))
        if i == t:
            cands = [c for c in cands if c in ends]
        if i == b - 1 and j > 1:
            cands = [c for c in cands if c > z[(i, j - 1)]]
        for c in cands:
            pair = (p.w(i, j), H(c))
            _tick(state)
            chi2 = chi | {pair}
            if not compatible(fam, chi2, s, t, new=(pair,), shortcut=state.shortcut):
                continue
            z[(i, j)] = c
            got = rec_layers(k + 1, chi2, z, used | {c})
            if got is not None:
                return got
            del z[(i, j)]
        return None

    def rec_paths(j, chi, z, used):
        if j > a:
            h = Assignment(chi)
            return h if h not in fam.union else None
        for path in sorted(cert.paths_to(z[(t, j)])):
            inner = path[1:t]
            if any(c in used for c in inner):
                continue
            new = frozenset((p.w(i, j), H(inner[i - 1])) for i in range(1, t))
            _tick(state)
            chi2 = chi | new
            if new and not compatible(fam, chi2, s, t, new=new, shortcut=state.shortcut):
                continue
            got = rec_paths(j + 1, chi2, z, used | set(inner))
            if got is not None:
                return got
        return None

    try:
        for y in _joint_order(fam, state, pool):
            state.y = y
            chi0 = frozenset({(U, H(x)), (V, H(y))})
            _tick(state)
            if not compatible(fam, chi0, s, t, shortcut=state.shortcut):
                continue
            got = rec_layers(0, chi0, {}, {x, y})
            if got is not None:
                return got, s, t
    except _Budget:
        return Exhausted("node budget", state.nodes)
    return Exhausted("no compatible extension", state.nodes)


# ---------------------------------------------------------------------------
# driver


@dataclass
class SupersatResult:
    family: CollectionFamily
    t: int | None
    hprime: GHypergraph | None
    stop: str
    steps: list[dict] = field(default_factory=list)
    goodness: dict = field(default_factory=dict)
    prime_violations: list = field(default_factory=list)
    config: SupersatConfig = field(default_factory=SupersatConfig)
    seconds: float = 0.0
    target: float = 0.0

    def manifest(self) -> dict:
        fam = self.family
        return {
            "inputs": {"n": fam.n, "m": fam.host.m, "a": fam.a, "b": fam.b, "k": float(Alg.of(fam.k))},
            "constants": self.config.to_dict(),
            "stop_reason": self.stop,
            "hyperedges": len(fam),
            "target": self.target,
            "t": self.t,
            "H_t_sizes": {str(t): len(h) for t, h in sorted(fam.by_t.items())},
            "H_st_sizes": fam.table(),
            "goodness": {
                "cap": fam.cap,
                "violations": {k: len(v) for k, v in self.goodness.items()},
                "prime_violations": len(self.prime_violations),
            },
            "x_fallbacks": sum(1 for s in self.steps if s.get("x_rank", 0) > 0),
            "seconds": round(self.seconds, 3),
        }


def graph_k(g: Graph, b: int) -> Alg:
    """k = e(G) / n^{1+1/b}."""
    return Alg.of(g.m) / Alg.power(g.n, 1 + Fraction(1, b))


def _saturated_forests(fam: CollectionFamily) -> list[Assignment]:
    D = fam.D("forest")
    out = []
    for chi, cnt in fam.union.indexed_sets():
        if len(chi) < 2:
            continue
        bound = D(frozenset(w for w, _ in chi))
        if not is_unbounded(bound) and cnt >= bound:
            out.append(Assignment(chi))
    return out


def supersaturate(
    g: Graph,
    a: int,
    b: int,
    config: SupersatConfig | None = None,
    progress: Callable | None = None,
) -> SupersatResult:
    """Grow {H_{s,t}} one compatible hyperedge at a time until the target
    delta k^{ab} n^2 is reached, the budget runs out, or a stage fails."""
    cfg = config or SupersatConfig()
    if a < 3 or b < 3:
        raise DomainError("the builder needs a >= 3 and b >= 3")
    start = time.monotonic()
    pattern = ThetaPattern(a, b)
    k = graph_k(g, b) if g.m else Alg.of(1)
    fam = CollectionFamily(pattern, g, k, cfg.delta, cfg.cap)
    eps = epsilon_schedule(b, cfg.c)
    target = Alg.of(cfg.delta) * Alg.of(k) ** (a * b) * Alg.power(g.n, 2)
    steps: list[dict] = []
    cache: dict = {}
    stop = "Budget"
    if g.m == 0:
        stop = "PrunedOut"
    while g.m:
        if Alg.of(len(fam) or 1) >= target and len(fam):
            stop = "TargetReached"
            break
        if len(fam) >= cfg.max_hyperedges or time.monotonic() - start > cfg.max_seconds:
            stop = "Budget"
            break
        step = _one_step(g, fam, cfg, eps, cache)
        steps.append(step)
        if progress:
            progress(step)
        if step["result"] != "inserted":
            stop = step["result"]
            break
    res = SupersatResult(fam, None, None, stop, steps, config=cfg, target=float(target))
    if fam.by_t:
        t = max(sorted(fam.by_t), key=lambda tt: len(fam.by_t[tt]))
        res.t = t
        res.hprime = fam.by_t[t]
        res.prime_violations = is_good(res.hprime, fam.D("prime", 0, t), cfg.cap).violations
    res.goodness = fam.goodness()
    res.seconds = time.monotonic() - start
    return res


def _one_step(g, fam: CollectionFamily, cfg: SupersatConfig, eps: EpsilonSchedule, cache: dict) -> dict:
    b = fam.b
    g0, removed = remove_saturated_edges(g, fam.union, fam.params("forest"))
    if g0.m == 0:
        return {"result": "PrunedOut", "removed": len(removed)}
    core = min_degree_core(g0, b)
    gprime, labels = g0.induced(core.vertices)
    if gprime.n < fam.pattern.n_vertices:
        return {"result": "PrunedOut", "m": gprime.n}
    key = (gprime.edges, labels)
    if key not in cache:
        cache.clear()
        sp = scale_parameters(gprime, g.n, fam.k, b)
        cache[key] = (sp, x_set(gprime, sp, eps))
    sp, xs = cache[key]
    if isinstance(xs, Failure):
        return {"result": "Failure", "step": xs.step}
    index = {v: i for i, v in enumerate(labels)}
    forests = []
    for chi in _saturated_forests(fam):
        if all(z in index for _, z in chi):
            forests.append(Assignment((w, index[z]) for w, z in chi))
    forest_index = ForestIndex(forests, fam.pattern)
    order = sorted(xs.X, key=lambda x: (fam.union.degree(((U, labels[x]),), check=False), x))
    info = {"m": sp.m, "r": sp.r, "t": xs.t, "X": len(xs.X), "removed": len(removed)}
    for rank, x in enumerate(order):
        cert = refine_paths(
            gprime, x, xs.t, sp, eps, forest_index, layers=xs.neighborhoods[x],
            fanout_floor=max(cfg.fanout, fam.a * (b - 1)), X=xs.X, pattern=fam.pattern,
        )
        if isinstance(cert, Failure):
            continue
        state = BuilderState(g, g0, gprime, labels, sp, cert, x, budget=cfg.node_budget, shortcut=cfg.shortcut)
        op = extend_case_b if xs.t == b else extend_case_lt_b
        got = op(state, fam)
        if isinstance(got, Exhausted):
            continue
        h, s, t = got
        fam.insert(h, s, t)
        bad = fam.goodness(only=[h])
        nbad = sum(len(v) for v in bad.values())
        if nbad:
            raise AssertionError(f"insertion broke goodness: {bad}")
        info.update(result="inserted", x=labels[x], y=labels[state.y], s=s, x_rank=rank, nodes=state.nodes)
        log.debug("inserted %s", info)
        return info
    info["result"] = "Exhausted"
    return info


# ---------------------------------------------------------------------------
# edge translation


class EdgeHypergraph:
    """Hyperedges are the host edge sets E_h of theta copies."""

    def __init__(self, host: Graph):
        self.host = host
        self.hyperedges: list[frozenset[frozenset[int]]] = []
        self._set: set = set()

    def __len__(self) -> int:
        return len(self.hyperedges)

    def add(self, es) -> bool:
        es = frozenset(frozenset(e) for e in es)
        if es in self._set:
            return False
        self._set.add(es)
        self.hyperedges.append(es)
        return True

    def degree(self, sigma) -> int:
        sigma = frozenset(frozenset(e) for e in sigma)
        return sum(1 for h in self.hyperedges if sigma <= h)


@dataclass
class EdgeReport:
    size: int
    source_size: int
    loss_ok: bool
    checked: int
    violations: list
    max_x: int
    x_ok: bool
    min_c: float


def _x_sets(pattern: ThetaPattern, host: Graph, sigma: frozenset) -> list[Assignment]:
    """All valid chi with chi_G = vertices of sigma and sigma inside E_chi."""
    verts = sorted(set().union(*sigma))
    nbr = {v: set() for v in verts}
    for e in sigma:
        x, y = tuple(e)
        nbr[x].add(y)
        nbr[y].add(x)
    order: list[int] = []
    for v in verts:
        if v in order:
            continue
        order.append(v)
        frontier = [v]
        while frontier:
            z = frontier.pop()
            for y in sorted(nbr[z]):
                if y not in order:
                    order.append(y)
                    frontier.append(y)
    padj = pattern.adjacency
    out = []
    m: dict[int, int] = {}
    used: set[int] = set()

    def rec(i):
        if i == len(order):
            chi = Assignment((w, z) for z, w in m.items())
            if is_valid(pattern, host, chi):
                out.append(chi)
            return
        z = order[i]
        placed = [y for y in nbr[z] if y in m]
        cands = set(pattern.vertices) if not placed else set.intersection(*(set(padj[m[y]]) for y in placed))
        for w in sorted(cands - used):
            m[z] = w
            used.add(w)
            rec(i + 1)
            used.discard(w)
            del m[z]

    rec(0)
    return out


def edge_bound_rhs(a: int, b: int, k, n: int, size: int) -> Alg:
    """k^{ab} n^2 / (k n^{1+1/b} min{k^{b/(b-1)}, k n^{(b-1)/(b(ab-1))}}^{size-1})."""
    k = Alg.of(k)
    m1 = k ** Fraction(b, b - 1)
    m2 = k * Alg.power(n, Fraction(b - 1, b * (a * b - 1)))
    lo = m1 if m1 <= m2 else m2
    return k ** (a * b) * Alg.power(n, 2) / (k * Alg.power(n, 1 + Fraction(1, b)) * lo ** (size - 1))


def edge_hypergraph(hprime: GHypergraph, D=None, cap: int = 3, k=None):
    """Translate to host edge sets and check the edge codegree bound.

    ``D`` is the vertex codegree function that hprime is good for (D'_t); for
    every sigma of at most ``cap`` edges inside some hyperedge it checks
    deg(sigma) <= sum over X(sigma) of D(chi_theta), and reports the smallest
    constant C making the closed-form bound hold.
    """
    p = hprime.pattern
    host = hprime.host
    eh = EdgeHypergraph(host)
    for h in hprime:
        if len(h) != p.n_vertices:
            raise InvalidAssignment("hyperedges must be full size")
        project(h, p, host)
        eh.add(edge_image(h, p))
    counts: Counter = Counter()
    for es in eh.hyperedges:
        items = sorted(tuple(sorted(e)) for e in es)
        for r in range(1, cap + 1):
            for sub in itertools.combinations(items, r):
                counts[frozenset(frozenset(e) for e in sub)] += 1
    violations = []
    max_x = 0
    min_c = 0.0
    kk = graph_k(host, p.b) if k is None else k
    for sigma, deg in counts.items():
        xs = _x_sets(p, host, sigma)
        max_x = max(max_x, len(xs))
        if D is not None:
            total = 0
            for chi in xs:
                d = D(chi.theta)
                if is_unbounded(d):
                    total = d
                    break
                total += d
            if not is_unbounded(total) and deg > total:
                violations.append((sigma, deg, total))
        rhs = edge_bound_rhs(p.a, p.b, kk, host.n, len(sigma))
        min_c = max(min_c, deg / float(rhs))

    return eh, EdgeReport(
        len(eh),
        len(hprime),
        len(eh) * factorial(p.n_vertices) >= len(hprime),
        len(counts),
        violations,
        max_x,
        max_x <= 2 ** p.n_vertices,
        min_c,
    )


def hyperedges_to_jsonl(h: GHypergraph) -> str:
    return h.to_jsonl()


def copy_source(a: int, b: int, config: SupersatConfig | None = None):
    """Callable (edges, n) -> theta copies (as edge lists) found by the
    builder; this is the supersaturation source of the container iteration."""

    def source(edges, n: int):
        g = Graph.from_edges(n, edges)
        if g.m == 0:
            return []
        res = supersaturate(g, a, b, config)
        out = []
        seen = set()
        for h in res.family.union:
            es = edge_image(h, res.family.pattern)
            if es not in seen:
                seen.add(es)
                out.append(sorted(tuple(sorted(e)) for e in es))
        return out

    return source
