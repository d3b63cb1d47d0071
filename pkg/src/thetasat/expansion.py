"""Expansion certificates: the epsilon schedule, concentrated t-neighbourhoods,
the X set, path refinement and a verifier that reports the largest epsilon for
which each expansion property holds."""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, Failure
from .exact import Alg
from .graph_core import Assignment, Graph, ThetaPattern, edge_image
from .pruning import ScaleParams

# ---------------------------------------------------------------------------
# epsilon schedule


@dataclass(frozen=True)
class EpsilonSchedule:
    """eps_t = c * (16(b+1))^{t-b} for t = 1..b."""

    b: int
    c: Fraction
    values: tuple[Fraction, ...]

    def __call__(self, t: int) -> Fraction:
        if not (1 <= t <= self.b):
            raise DomainError(f"t={t} outside [1, {self.b}]")
        return self.values[t - 1]

    @property
    def ratio(self) -> int:
        return 16 * (self.b + 1)


def epsilon_schedule(b: int, c=Fraction(1, 2)) -> EpsilonSchedule:
    c = Fraction(c)
    if b < 1:
        raise DomainError("b >= 1 required")
    if not (0 < c <= 1):
        raise DomainError("c must lie in (0, 1]")
    q = 16 * (b + 1)
    return EpsilonSchedule(b, c, tuple(c * Fraction(q) ** (t - b) for t in range(1, b + 1)))


def _top_cap(sp: ScaleParams, t: int) -> Alg:
    """l^{(b-t)/(b-1)} m^{t/b}, the size cap on the last layer."""
    b = sp.b
    return sp.ell ** Fraction(b - t, b - 1) * sp.m_pow(Fraction(t, b))


def _le_alg(count: int, bound: Alg) -> bool:
    return count == 0 or Alg.of(count) <= bound


def _at_least_alg(count: int, bound: Alg) -> bool:
    return count > 0 and Alg.of(count) >= bound


# ---------------------------------------------------------------------------
# concentrated neighbourhoods


def _trim(g: Graph, layers: list[set[int]], need: Fraction) -> None:
    """Drop y in A_{i-1} with fewer than ``need`` neighbours in A_i, until stable."""
    changed = True
    while changed:
        changed = False
        for i in range(len(layers) - 1, 0, -1):
            nxt = layers[i]
            weak = [y for y in layers[i - 1] if len(g.adjacency[y] & nxt) < need]
            if weak:
                layers[i - 1].difference_update(weak)
                changed = True


def concentrated_neighborhood(g: Graph, x: int, t: int, sp: ScaleParams, eps: EpsilonSchedule):
    """Greedy concentrated t-neighbourhood of x, or None.

    Layers start as full neighbourhoods (x itself is left out of A_1..A_t,
    since no path may return to it), weak vertices are trimmed, and while the
    last layer is over its cap the vertex with the fewest back-neighbours is
    dropped (larger id first on ties).
    """
    need = eps(t) * sp.lm
    layers = [{x}]
    for _ in range(t):
        nxt = set().union(*(g.adjacency[y] for y in layers[-1])) - {x}
        layers.append(nxt)
    _trim(g, layers, need)
    cap = _top_cap(sp, t)
    capf = cap.floor()
    while x in layers[0] and len(layers[t]) > capf:
        prev = layers[t - 1]
        v = min(layers[t], key=lambda z: (len(g.adjacency[z] & prev), -z))
        layers[t].discard(v)
        _trim(g, layers, need)
    if x not in layers[0]:
        return None
    return tuple(frozenset(a) for a in layers)


def t_estimate(g: Graph, x: int, sp: ScaleParams, eps: EpsilonSchedule):
    """Smallest t in [2, b] with a greedy concentrated t-neighbourhood.

    Returns ``(t, layers)``, or a :class:`Failure` when even t = b fails.
    This is an upper bound on the true t(x).
    """
    if not (0 <= x < g.n):
        raise DomainError(f"vertex {x} not in the graph")
    for t in range(2, sp.b + 1):
        layers = concentrated_neighborhood(g, x, t, sp, eps)
        if layers is not None:
            return t, layers
    return Failure("t_estimate", f"no concentrated neighbourhood up to t={sp.b}")


def is_concentrated(g: Graph, x: int, layers, sp: ScaleParams, need) -> bool:
    t = len(layers) - 1
    if set(layers[0]) != {x} or t < 1:
        return False
    if not _le_alg(len(layers[t]), _top_cap(sp, t)):
        return False
    return all(
        len(g.adjacency[y] & set(layers[i])) >= need
        for i in range(1, t + 1)
        for y in layers[i - 1]
    )


def lambda_value(sp: ScaleParams, t: int) -> Alg:
    """Lambda(t) = (4b)^{t-b} l^{(b-t)/(b-1)} m^{t/b}."""
    return Alg.power(4 * sp.b, t - sp.b) * _top_cap(sp, t)


@dataclass
class XSetResult:
    t: int
    X: frozenset[int]
    y_layers: list[frozenset[int]]
    estimates: dict[int, int]
    neighborhoods: dict[int, tuple[frozenset[int], ...]]
    lam: Alg
    half_lambda_met: bool

    def __bool__(self) -> bool:
        return True


def x_set(g: Graph, sp: ScaleParams, eps: EpsilonSchedule, estimates=None):
    """t, X and the Y layers.  Vertices whose estimate fails count as t = b + 1.

    For x in X the returned neighbourhood is the greedy one with every
    Y_0..Y_{b-i} removed from layer i.
    """
    b = sp.b
    est: dict[int, int] = {}
    tuples: dict[int, tuple] = {}
    for v in range(g.n):
        r = estimates[v] if estimates is not None else t_estimate(g, v, sp, eps)
        if isinstance(r, Failure):
            est[v] = b + 1
        else:
            est[v], tuples[v] = r
    t = None
    for cand in range(2, b + 1):
        cnt = sum(1 for v in est if est[v] <= cand)
        if cnt and Alg.of(cnt) >= lambda_value(sp, cand):
            t = cand
            break
    if t is None:
        return Failure("x_set", "no t in [2, b] has Lambda(t) low-estimate vertices")
    alpha = eps(t) / (2 * (b + 1))
    need = alpha * sp.lm
    ys = [frozenset(v for v in est if est[v] < t)]
    used = set(ys[0])
    for _ in range(1, b + 1):
        prev = ys[-1]
        layer = frozenset(
            v for v in range(g.n) if v not in used and len(g.adjacency[v] & prev) >= need
        )
        ys.append(layer)
        used |= layer
    excluded = set().union(*ys[1:])
    X = frozenset(v for v in est if est[v] == t and v not in excluded)
    hoods = {}
    for x in sorted(X):
        layers = tuples[x]
        hoods[x] = tuple(
            frozenset(layers[i] - set().union(*ys[: b - i + 1])) if i else layers[0]
            for i in range(t + 1)
        )
    lam = lambda_value(sp, t)
    met = _at_least_alg(2 * len(X), lam)
    return XSetResult(t, X, ys, est, hoods, lam, met)


# ---------------------------------------------------------------------------
# path families


class ForestIndex:
    """Forbidden host forests, indexed by edge for fast path checks."""

    def __init__(self, forests: Iterable = (), pattern: ThetaPattern | None = None):
        """Items are Assignments (projected through ``pattern``) or host edge sets."""
        self._by_edge: dict[frozenset[int], list] = defaultdict(list)
        self.items = []
        for f in forests:
            if isinstance(f, Assignment):
                if pattern is None:
                    raise DomainError("assignments need the pattern to project them")
                verts = f.host
                edges = edge_image(f, pattern)
            else:
                edges = frozenset(frozenset(e) for e in f)
                verts = frozenset().union(*edges) if edges else frozenset()
            if not edges:
                continue
            item = (verts, edges)
            self.items.append(item)
            for e in edges:
                self._by_edge[e].append(item)

    def __len__(self) -> int:
        return len(self.items)

    def closes(self, path_vertices: set[int], path_edges: set[frozenset[int]], new_edge) -> bool:
        """True if adding ``new_edge`` completes a forbidden forest."""
        for verts, edges in self._by_edge.get(frozenset(new_edge), ()):
            if verts <= path_vertices and edges <= path_edges:
                return True
        return False

    def contained_in(self, path: tuple[int, ...]) -> bool:
        vs = set(path)
        es = {frozenset(e) for e in zip(path, path[1:])}
        return any(v <= vs and e <= es for v, e in self.items)


def branching_factor(paths: Iterable[tuple[int, ...]]) -> int:
    nxt: dict[tuple[int, int], set[int]] = defaultdict(set)
    for p in paths:
        for i in range(len(p) - 1):
            nxt[(i, p[i])].add(p[i + 1])
    return max((len(s) for s in nxt.values()), default=0)


def _segment_counts(paths, i, j) -> Counter:
    segs = {p[i : j + 1] for p in paths}
    return Counter((s[0], s[-1]) for s in segs)


@dataclass
class ExpansionCertificate:
    x: int
    t: int
    layers: tuple[frozenset[int], ...]
    paths: tuple[tuple[int, ...], ...]
    eps_used: Fraction
    X: frozenset[int] = frozenset()
    fanout: int = 0
    conditions: dict = field(default_factory=dict)

    def __post_init__(self):
        self._to: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for p in self.paths:
            self._to[p[-1]].append(p)

    def paths_to(self, y: int) -> list[tuple[int, ...]]:
        """Q[x -> y]."""
        return list(self._to.get(y, ()))

    @property
    def endpoints(self) -> list[int]:
        return sorted(self._to)

    def to_json(self) -> str:
        return json.dumps(
            {
                "x": self.x,
                "t": self.t,
                "layers": [sorted(a) for a in self.layers],
                "paths": [list(p) for p in self.paths],
                "eps_used": str(self.eps_used),
                "X": sorted(self.X),
                "fanout": self.fanout,
                "conditions": self.conditions,
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "ExpansionCertificate":
        d = json.loads(text)
        return cls(
            d["x"],
            d["t"],
            tuple(frozenset(a) for a in d["layers"]),
            tuple(tuple(p) for p in d["paths"]),
            Fraction(d["eps_used"]),
            frozenset(d.get("X", ())),
            d.get("fanout", 0),
            d.get("conditions", {}),
        )


def _build_paths(g, x, layers, q, forests: ForestIndex):
    t = len(layers) - 1
    choice: dict[tuple[int, int], list[int]] = {}

    def Q(i, v):
        key = (i, v)
        if key not in choice:
            choice[key] = sorted(g.adjacency[v] & layers[i])[:q]
        return choice[key]

    out = []
    path = [x]
    pv = {x}
    pe: set[frozenset[int]] = set()

    def grow(i):
        if i > t:
            out.append(tuple(path))
            return
        last = path[-1]
        for u in Q(i, last):
            if u in pv:
                continue
            e = frozenset((last, u))
            pv.add(u)
            pe.add(e)
            if not (forests and forests.closes(pv, pe, e)):
                path.append(u)
                grow(i + 1)
                path.pop()
            pv.discard(u)
            pe.discard(e)

    grow(1)
    return out


def refine_paths(
    g: Graph,
    x: int,
    t: int,
    sp: ScaleParams,
    eps: EpsilonSchedule,
    forbidden: Iterable = (),
    layers=None,
    fanout_floor: int = 1,
    X: Iterable[int] = (),
    pattern: ThetaPattern | None = None,
):
    """Balanced, then refined, t-neighbourhood of x with its path family.

    ``layers`` defaults to the greedy concentrated t-neighbourhood.  Each
    Q_i(v) holds the first ``max(ceil(eps_t l m^{1/b} / 2), fanout_floor)``
    neighbours of v in A_i by id.  Unbalanced pairs are removed by deleting
    paths in insertion order, then the three vertex-deletion steps run until
    stable.  Conditions that cannot be met at small scale are recorded in
    ``conditions`` rather than raised.
    """
    forests = forbidden if isinstance(forbidden, ForestIndex) else ForestIndex(forbidden, pattern)
    b = sp.b
    et = eps(t)
    L = sp.lm
    if layers is None:
        layers = concentrated_neighborhood(g, x, t, sp, eps)
        if layers is None:
            return Failure("layers", f"no concentrated {t}-neighbourhood of {x}")
    A = [set(a) for a in layers]
    if len(A) != t + 1 or A[0] != {x}:
        return Failure("layers", "malformed layer tuple")
    if len(A[1]) > L:
        A[1] = set(sorted(A[1])[:L])
    q = max(math.ceil(et * L / 2), fanout_floor, 1)
    paths = _build_paths(g, x, A, q, forests)
    if not paths:
        return Failure("paths", "no path avoids repeats and forbidden forests")

    # unbalanced pairs
    ell = sp.ell
    expo = Fraction(b, b - 1)
    limits = {s: (ell ** (expo * (s - 1))).floor() for s in range(2, t + 1)}
    alive = list(paths)
    changed = True
    while changed:
        changed = False
        for i in range(t + 1):
            for j in range(i + 2, t + 1):
                if (i, j) == (0, t):
                    continue
                lim = limits[j - i]
                counts = _segment_counts(alive, i, j)
                bad = {k for k, c in counts.items() if c > lim}
                if not bad:
                    continue
                for idx, p in enumerate(alive):
                    if (p[i], p[j]) in bad:
                        del alive[idx]
                        changed = True
                        break
    if not alive:
        return Failure("balance", "unbalanced-pair trimming removed every path")

    # refinement steps
    th1 = Fraction(1, t) * Fraction(1, 4 ** (2 * t)) * et * L
    th2 = (Alg.of(Fraction(1, 4 ** (2 * t)) * et * et) * ell ** expo).ceil()
    th3 = max((Alg.of(Fraction(1, 4 ** (2 * t)) * et ** t) * ell ** (expo * (t - 1))).ceil(), 1)
    last_step = None
    changed = True
    while changed:
        changed = False
        for i in range(1, t):
            weak = {v for v in A[i] if len(g.adjacency[v] & A[i + 1]) < th1}
            if weak:
                A[i] -= weak
                alive = [p for p in alive if p[i] not in weak]
                changed, last_step = True, "step1"
        weak = {v for v in A[t] if len(g.adjacency[v] & A[t - 1]) < th2}
        if weak:
            A[t] -= weak
            alive = [p for p in alive if p[t] not in weak]
            changed, last_step = True, "step2"
        per = Counter(p[t] for p in alive)
        weak = {v for v in A[t] if per[v] < th3}
        if weak:
            A[t] -= weak
            alive = [p for p in alive if p[t] not in weak]
            changed, last_step = True, "step3"
        if not alive:
            return Failure(last_step or "refine", "refinement emptied the path family")

    B = tuple(frozenset(a) for a in A)
    cert = ExpansionCertificate(x, t, B, tuple(alive), et, frozenset(X), q)
    cert.conditions = certificate_conditions(g, cert, sp)
    return cert


def certificate_conditions(g: Graph, cert: ExpansionCertificate, sp: ScaleParams) -> dict:
    """Flags for the balanced and refined neighbourhood conditions."""
    t, et, L, B = cert.t, cert.eps_used, sp.lm, cert.layers
    ell = sp.ell
    expo = Fraction(sp.b, sp.b - 1)
    paths = cert.paths
    balanced_ii = True
    for i in range(t + 1):
        for j in range(i + 2, t + 1):
            if (i, j) == (0, t):
                continue
            lim = ell ** (expo * (j - i - 1))
            if any(not _le_alg(c, lim) for c in _segment_counts(paths, i, j).values()):
                balanced_ii = False
    c = Fraction(1, 4 ** (2 * t))
    per = Counter(p[t] for p in paths)
    return {
        "balanced_i": len(B[1]) <= L and _le_alg(len(B[t]), _top_cap(sp, t)),
        "balanced_ii": balanced_ii,
        "balanced_iii": branching_factor(paths) <= et * L,
        "refined_1": all(
            len(g.adjacency[u] & B[i + 1]) >= Fraction(1, t) * c * et * L
            for i in range(t)
            for u in B[i]
        ),
        "refined_2": all(
            _at_least_alg(len(g.adjacency[v] & B[t - 1]), Alg.of(c * et * et) * ell ** expo)
            for v in B[t]
        ),
        "refined_3": all(
            _at_least_alg(per[v], Alg.of(c * et ** t) * ell ** (expo * (t - 1))) for v in B[t]
        ),
        "size": Alg.of(4 * len(paths)) >= Alg.of(et / 4) ** t * Alg.of(L) ** t,
    }


# ---------------------------------------------------------------------------
# verification


@dataclass
class ExpansionReport:
    clauses: dict[str, float]
    epsilon: float
    x_fraction: float
    detail: dict = field(default_factory=dict)

    @property
    def all_positive(self) -> bool:
        return all(v > 0 for v in self.clauses.values())

    def to_json(self) -> str:
        return json.dumps(
            {"clauses": self.clauses, "epsilon": self.epsilon, "x_fraction": self.x_fraction,
             "detail": self.detail},
            indent=1,
        )


def _ratio(count: int, bound: Alg) -> float:
    if count == 0:
        return 0.0
    return float(Alg.of(count) / bound)


def verify_expansion(
    cert: ExpansionCertificate,
    sp: ScaleParams,
    g: Graph,
    forbidden: Iterable = (),
    pattern: ThetaPattern | None = None,
) -> ExpansionReport:
    """Largest epsilon for which each expansion clause (a)-(h) holds."""
    t, b, L = cert.t, sp.b, sp.lm
    ell = sp.ell
    expo = Fraction(b, b - 1)
    B = cert.layers
    paths = cert.paths
    x = cert.x
    out: dict[str, float] = {}

    ok = len(B) == t + 1 and set(B[0]) == {x}
    for p in paths:
        ok = ok and len(p) == t + 1 and p[0] == x and len(set(p)) == len(p)
        ok = ok and all(p[i] in B[i] for i in range(t + 1))
        ok = ok and all(g.has_edge(u, v) for u, v in zip(p, p[1:]))
    out["a"] = 1.0 if ok else 0.0

    out["b"] = _ratio(
        min(len(B[t - 1]), len(B[t])),
        ell ** Fraction(b - t + 1, b - 1) * sp.m_pow(Fraction(t - 1, b)),
    )
    out["c"] = _ratio(len(paths), ell ** t * sp.m_pow(Fraction(t, b)))

    fwd = min(
        (len(g.adjacency[z] & B[i]) for i in range(1, t + 1) for z in B[i - 1]), default=0
    )
    back = min((len(g.adjacency[z] & B[t - 1]) for z in B[t]), default=0)
    d1 = fwd / L if B[t] else 0.0
    d2 = _ratio(back, ell ** expo)
    out["d"] = min(d1, d2)

    per = Counter(p[t] for p in paths)
    out["e"] = min((_ratio(per[y], ell ** (expo * (t - 1))) for y in B[t]), default=0.0)

    worst_f = math.inf
    for y in {p[t] for p in paths}:
        cnt: Counter = Counter()
        for p in cert.paths_to(y):
            interior = p[1:t]
            for r in range(1, len(interior) + 1):
                for S in itertools.combinations(sorted(interior), r):
                    cnt[S] += 1
        for S, c in cnt.items():
            worst_f = min(worst_f, float(ell ** (expo * (t - 1 - len(S))) / Alg.of(c)))
    out["f"] = worst_f if paths else 0.0

    forests = forbidden if isinstance(forbidden, ForestIndex) else ForestIndex(forbidden, pattern)
    out["g"] = 0.0 if any(forests.contained_in(p) for p in paths) else 1.0

    X = cert.X or frozenset({x})
    out["h"] = _ratio(len(X), ell ** Fraction(b - t, b) * sp.m_pow(Fraction(t, b)))

    eps = min(out.values())
    return ExpansionReport(
        out,
        eps,
        len(X) / sp.m,
        {"paths": len(paths), "layer_sizes": [len(a) for a in B], "t": t, "x": x},
    )
