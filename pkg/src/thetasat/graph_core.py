"""Host graphs, the theta pattern, pattern-to-host assignments and 2-density."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, InvalidAssignment

# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges keep their input order and orientation so the edge-list text
    format round-trips byte for byte.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise DomainError("negative vertex count")
        adj: list[set[int]] = [set() for _ in range(n)]
        out = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"loop at {u} in a simple graph")
            if v in adj[u]:
                raise DomainError(f"parallel edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
            out.append((u, v))
        return cls(n, tuple(out), tuple(frozenset(a) for a in adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, itertools.combinations(range(n), 2))

    @classmethod
    def complete_bipartite(cls, s: int, t: int) -> "Graph":
        return cls.from_edges(s + t, ((i, s + j) for i in range(s) for j in range(t)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns the labels."""
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(labels), edges), labels

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        gone = {frozenset(e) for e in removed}
        return Graph.from_edges(self.n, (e for e in self.edges if frozenset(e) not in gone))

    # edge-list text format ---------------------------------------------------

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        rows = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append(line.split())
        if not rows:
            raise DomainError("empty edge list")
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
        except (ValueError, IndexError) as exc:
            raise DomainError(f"malformed edge list: {exc}") from None
        if len(edges) != m:
            raise DomainError(f"header says {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class MultiGraph:
    """Multigraph with loops on an arbitrary vertex set.

    A loop contributes 1 to the degree of its vertex.
    """

    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "MultiGraph":
        vs = frozenset(vertices)
        es = tuple((int(u), int(v)) for u, v in edges)
        for u, v in es:
            if u not in vs or v not in vs:
                raise DomainError(f"edge ({u},{v}) leaves the vertex set")
        return cls(vs, es)

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        return cls(frozenset(range(g.n)), g.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            if v != u:
                deg[v] += 1
        return deg

    def min_degree(self) -> int:
        return min(self.degrees().values(), default=0)

    def induced(self, vertices: Iterable[int]) -> "MultiGraph":
        vs = frozenset(vertices) & self.vertices
        return MultiGraph(vs, tuple(e for e in self.edges if e[0] in vs and e[1] in vs))


# ---------------------------------------------------------------------------
# the theta pattern

U, V = 0, 1


@dataclass(frozen=True)
class ThetaPattern:
    """theta_{a,b}: hubs u=0, v=1 and a internally disjoint u-v paths of length b.

    Internal vertex w_i^j (1 <= i <= b-1, 1 <= j <= a) has label
    ``2 + (i-1)*a + (j-1)``, i.e. row-major over the layer index i.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise DomainError(f"theta pattern needs a, b >= 2 (got a={self.a}, b={self.b})")

    @property
    def n_vertices(self) -> int:
        return self.a * (self.b - 1) + 2

    @property
    def n_edges(self) -> int:
        return self.a * self.b

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    def w(self, i: int, j: int) -> int:
        if i == 0:
            return U
        if i == self.b:
            return V
        if not (1 <= i < self.b and 1 <= j <= self.a):
            raise DomainError(f"no vertex w_{i}^{j}")
        return 2 + (i - 1) * self.a + (j - 1)

    def position(self, x: int) -> tuple[int, int]:
        """(i, j) for w_i^j; hubs give (0, 0) and (b, 0)."""
        if x == U:
            return 0, 0
        if x == V:
            return self.b, 0
        i, j = divmod(x - 2, self.a)
        return i + 1, j + 1

    def path(self, j: int) -> tuple[int, ...]:
        return tuple(self.w(i, j) for i in range(self.b + 1))

    @property
    def paths(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.path(j) for j in range(1, self.a + 1))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return _pattern_edges(self.a, self.b)

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return _pattern_adjacency(self.a, self.b)

    def label(self, x: int) -> str:
        if x == U:
            return "u"
        if x == V:
            return "v"
        i, j = self.position(x)
        return f"w{i}_{j}"

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.n_vertices, self.edges)

    def induced_edge_count(self, nu: Iterable[int]) -> int:
        s = set(nu)
        return sum(1 for x, y in self.edges if x in s and y in s)

    def induces_forest(self, nu: Iterable[int]) -> bool:
        """A vertex subset of a theta graph spans a cycle iff it holds both
        hubs and at least two complete paths."""
        s = set(nu)
        if U not in s or V not in s:
            return True
        full = sum(1 for p in self.paths if all(x in s for x in p[1:-1]))
        return full < 2


_EDGE_CACHE: dict[tuple[int, int], tuple] = {}
_ADJ_CACHE: dict[tuple[int, int], tuple] = {}


def _pattern_edges(a: int, b: int) -> tuple[tuple[int, int], ...]:
    key = (a, b)
    if key not in _EDGE_CACHE:
        p = ThetaPattern(a, b)
        es = []
        for j in range(1, a + 1):
            path = p.path(j)
            es.extend(zip(path, path[1:]))
        _EDGE_CACHE[key] = tuple(es)
    return _EDGE_CACHE[key]


def _pattern_adjacency(a: int, b: int) -> tuple[frozenset[int], ...]:
    key = (a, b)
    if key not in _ADJ_CACHE:
        nv = a * (b - 1) + 2
        adj: list[set[int]] = [set() for _ in range(nv)]
        for x, y in _pattern_edges(a, b):
            adj[x].add(y)
            adj[y].add(x)
        _ADJ_CACHE[key] = tuple(frozenset(s) for s in adj)
    return _ADJ_CACHE[key]


def theta_pattern(a: int, b: int) -> ThetaPattern:
    return ThetaPattern(a, b)


# ---------------------------------------------------------------------------
# assignments

Pair = tuple[int, int]  # (pattern vertex, host vertex)


class Assignment(frozenset):
    """A set of (pattern vertex, host vertex) pairs."""

    __slots__ = ()

    @property
    def theta(self) -> frozenset[int]:
        return frozenset(w for w, _ in self)

    @property
    def host(self) -> frozenset[int]:
        return frozenset(z for _, z in self)

    def mapping(self) -> dict[int, int]:
        return dict(self)

    def union(self, *others) -> "Assignment":
        return Assignment(frozenset.union(self, *others))

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self)

    def __repr__(self) -> str:
        return f"Assignment({sorted(self)})"


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    condition: int | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def validate_assignment(p: ThetaPattern, g: Graph, chi: Iterable[Pair]) -> ValidityReport:
    """Check injectivity (condition 1) and edge preservation (condition 2)."""
    pairs = sorted(chi)
    for w, z in pairs:
        if not (0 <= w < p.n_vertices):
            raise DomainError(f"pattern vertex {w} out of range")
        if not (0 <= z < g.n):
            raise DomainError(f"host vertex {z} out of range")
    seen_w: dict[int, Pair] = {}
    seen_z: dict[int, Pair] = {}
    for pair in pairs:
        w, z = pair
        if w in seen_w:
            return ValidityReport(False, 1, (seen_w[w], pair))
        if z in seen_z:
            return ValidityReport(False, 1, (seen_z[z], pair))
        seen_w[w] = pair
        seen_z[z] = pair
    adj = p.adjacency
    for i, (w, z) in enumerate(pairs):
        for w2, z2 in pairs[i + 1:]:
            if w2 in adj[w] and not g.has_edge(z, z2):
                return ValidityReport(False, 2, ((w, z), (w2, z2)))
    return ValidityReport(True)


def is_valid(p: ThetaPattern, g: Graph, chi: Iterable[Pair]) -> bool:
    """Fast boolean validity check without range checks."""
    ws, zs = set(), set()
    pairs = list(chi)
    for w, z in pairs:
        if w in ws or z in zs:
            return False
        ws.add(w)
        zs.add(z)
    adj = p.adjacency
    m = dict(pairs)
    for w, z in pairs:
        for w2 in adj[w]:
            z2 = m.get(w2)
            if z2 is not None and z2 not in g.adjacency[z]:
                return False
    return True


@dataclass(frozen=True)
class Projection:
    theta: frozenset[int]
    host: frozenset[int]
    graph_vertices: frozenset[int]
    graph_edges: frozenset[frozenset[int]]

    @property
    def edges(self) -> frozenset[frozenset[int]]:
        """E_chi."""
        return self.graph_edges


def project(chi: Iterable[Pair], p: ThetaPattern, g: Graph | None = None) -> Projection:
    """Projection graph H_chi: vertex set chi_G, edges images of pattern edges."""
    chi = Assignment(chi)
    if g is not None:
        rep = validate_assignment(p, g, chi)
        if not rep:
            raise InvalidAssignment(f"condition {rep.condition} fails at {rep.witness}")
    m = chi.mapping()
    if len(m) != len(chi) or len(set(m.values())) != len(chi):
        raise InvalidAssignment("assignment is not injective")
    edges = set()
    for x, y in p.edges:
        if x in m and y in m:
            edges.add(frozenset((m[x], m[y])))
    return Projection(chi.theta, chi.host, chi.host, frozenset(edges))


def edge_image(chi: Iterable[Pair], p: ThetaPattern) -> frozenset[frozenset[int]]:
    m = dict(chi)
    return frozenset(frozenset((m[x], m[y])) for x, y in p.edges if x in m and y in m)


# ---------------------------------------------------------------------------
# 2-density


@dataclass(frozen=True)
class DensityResult:
    value: Fraction
    witness: frozenset[int]
    witness_edges: int


def _two_core(vertices: frozenset[int], adj) -> frozenset[int]:
    alive = set(vertices)
    deg = {v: len(adj[v] & alive) for v in alive}
    stack = [v for v, d in deg.items() if d < 2]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return frozenset(alive)


def _components(vertices: frozenset[int], adj) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(vertices):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in vertices and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def _count_edges(vs: frozenset[int], adj) -> int:
    return sum(len(adj[v] & vs) for v in vs) // 2


def _core_states(vertices: frozenset[int], adj) -> Iterator[frozenset[int]]:
    """All connected vertex sets whose induced subgraph has min degree >= 2,
    reachable from the 2-core by single-vertex removals plus re-coring."""
    seen: set[frozenset[int]] = set()
    stack = list(_components(_two_core(vertices, adj), adj))
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        yield s
        for x in s:
            for comp in _components(_two_core(s - {x}, adj), adj):
                if comp not in seen:
                    stack.append(comp)


def two_density(g: Graph, proper_only: bool = False) -> DensityResult:
    """Exact max of (e'-1)/(v'-2) over subgraphs with at least two edges.

    Removing a vertex of degree <= 1 never lowers the ratio once e' >= v'-1,
    so the optimum is either a small forest (a path on two edges, or two
    disjoint edges) or a connected induced subgraph of minimum degree 2.
    Those are found by a memoised search over 2-cores, exponential in the
    worst case but fine for patterns with up to ~20 vertices.

    ``proper_only`` excludes the whole graph (its non-isolated part with all
    edges), giving m_2^*.
    """
    adj = g.adjacency
    active = frozenset(v for v in range(g.n) if adj[v])
    full_key = (active, g.m)

    best: tuple[Fraction, frozenset[int], int] | None = None

    def offer(value: Fraction, vs: frozenset[int], e: int) -> None:
        nonlocal best
        if proper_only and (vs, e) == full_key:
            return
        if best is None or value > best[0] or (value == best[0] and len(vs) < len(best[1])):
            best = (value, vs, e)

    # forests
    for v in range(g.n):
        if len(adj[v]) >= 2:
            a, b = sorted(adj[v])[:2]
            offer(Fraction(1), frozenset((v, a, b)), 2)
            break
    else:
        if g.m >= 2:
            (a, b), (c, d) = g.edges[0], g.edges[1]
            offer(Fraction(1, 2), frozenset((a, b, c, d)), 2)

    for s in _core_states(active, adj):
        e = _count_edges(s, adj)
        offer(Fraction(e - 1, len(s) - 2), s, e)
        if proper_only and len(s) > 2:
            # drop one edge between two vertices of degree >= 2 in H[s]
            for x in s:
                for y in adj[x] & s:
                    if x < y and len(adj[x] & s) >= 2 and len(adj[y] & s) >= 2 and e - 1 >= 2:
                        offer(Fraction(e - 2, len(s) - 2), s, e - 1)
                        break
                else:
                    continue
                break

    if best is None:
        raise DomainError("no subgraph with the required number of edges")
    return DensityResult(best[0], best[1], best[2])


# ---------------------------------------------------------------------------
# G(n, p)


def pair_index(u: int, v: int, n: int) -> int:
    """Rank of the pair u < v in lexicographic order."""
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def _uniform64(seed: int, index: int) -> int:
    h = hashlib.blake2b(digest_size=8, key=int(seed).to_bytes(16, "little", signed=True))
    h.update(index.to_bytes(16, "little"))
    return int.from_bytes(h.digest(), "little")


def sample_gnp(n: int, p, seed: int) -> Graph:
    """Binomial random graph; pair ``i`` is kept iff U_i < p with
    ``U_i = hash(seed, i) / 2^64``.  Order independent and reproducible."""
    p = Fraction(p) if not isinstance(p, float) else Fraction(p).limit_denominator(10 ** 12)
    if not (0 <= p <= 1):
        raise DomainError("p must lie in [0, 1]")
    scale = 1 << 64
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if p == 1 or (p > 0 and Fraction(_uniform64(seed, pair_index(u, v, n)), scale) < p):
                edges.append((u, v))
    return Graph.from_edges(n, edges)
