"""Independent brute-force derivations of the frozen expected values.

Nothing here imports the package.  Run ``python tests/oracles/derive.py`` to
regenerate ``frozen.json``; the test suite only reads the JSON.
"""

import itertools
import json
import math
import pathlib

import sympy
import networkx as nx



def theta_edges(a, b):
    # plain construction: hubs 'u','v', internal ('w', i, j)
    def lab(i, j):
        return "u" if i == 0 else "v" if i == b else ("w", i, j)
    es = []
    for j in range(1, a + 1):
        es.extend((lab(i, j), lab(i + 1, j)) for i in range(b))
    return es


def brute_two_density(edges):
    """max (e'-1)/(v'-2) over every edge subset with >= 2 edges (v' = spanned vertices)."""
    from fractions import Fraction
    best = None
    for r in range(2, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            vs = {x for e in sub for x in e}
            if len(vs) <= 2:
                continue
            val = Fraction(r - 1, len(vs) - 2)
            best = val if best is None or val > best else best
    return best


def brute_density_by_vertex_sets(edges):
    """max over vertex subsets of (e(S)-1)/(|S|-2) with e(S) >= 2 (induced is optimal)."""
    from fractions import Fraction
    vs = sorted({x for e in edges for x in e}, key=str)
    best = None
    for r in range(3, len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            s = set(sub)
            e = sum(1 for x, y in edges if x in s and y in s)
            if e >= 2:
                val = Fraction(e - 1, r - 2)
                best = val if best is None or val > best else best
    return best


def count_copies(host: nx.Graph, pattern: nx.Graph) -> int:
    """Number of distinct edge sets of subgraphs isomorphic to pattern."""
    gm = nx.algorithms.isomorphism.GraphMatcher(host, pattern)
    seen = set()
    for m in gm.subgraph_monomorphisms_iter():
        inv = {v: k for k, v in m.items()}
        seen.add(frozenset(frozenset((inv[x], inv[y])) for x, y in pattern.edges))
    return len(seen)


def brute_ex(host: nx.Graph, pattern: nx.Graph) -> int:
    edges = list(host.edges)
    best = 0
    for mask in range(1 << len(edges)):
        sub = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        h = nx.Graph(sub)
        if not nx.algorithms.isomorphism.GraphMatcher(h, pattern).subgraph_is_monomorphic():
            best = len(sub)
    return best


def codegree_values():
    """Exact symbolic evaluation (sympy simplifies the rational powers)."""
    R = sympy.Rational
    c = sympy.ceiling
    out = {}
    a, b, k, n, d = 6, 3, R(2), R(64), R(1, 10)
    out["forest_e1"] = int(c(k ** (a * b) * n ** 2 / (d * k * n ** (1 + R(1, b)))))
    k = R(4)
    out["forest_e2"] = int(c(k ** (a * b) * n ** 2 / (d * k * n ** (1 + R(1, b)) * (d * k ** R(b, b - 1)))))
    k = R(2)
    for s in (0, 3):
        out[f"sb_s{s}"] = int(c(k ** 18 * n ** 2 / (R(2) ** (-s) * n ** 2 * d ** 2)))
    a, b, t, k, n, d = 3, 4, 2, R(8), R(16), R(1, 2)
    out["st_0_2"] = int(c(k ** (a * b) * n ** 2 / (k ** R(2 * b - 2 * t + 1, b - 1) * n ** R(2 * t - 1, b) * d ** 2)))
    k = R(2)
    out["t_only"] = int(c(k ** (a * b) * n ** 2 / (k * n ** (1 + R(1, b)) * d ** 3)))
    # an irrational case: k = 3, a=3, b=3, n=20, delta=3/10, forest family on one edge
    a, b, k, n, d = 3, 3, R(3), R(20), R(3, 10)
    expr = k ** (a * b) * n ** 2 / (d * k * n ** (1 + R(1, b)))
    out["forest_irrational"] = int(c(expr))
    out["forest_irrational_float"] = float(expr)
    return out


def main():
    frozen = {}
    dens = {}
    for a in range(2, 6):
        for b in range(2, 6):
            es = theta_edges(a, b)
            val = brute_density_by_vertex_sets(es)
            if len(es) <= 12:
                assert brute_two_density(es) == val
            dens[f"{a},{b}"] = [val.numerator, val.denominator]
    frozen["two_density_theta"] = dens
    c4 = nx.cycle_graph(4)
    frozen["copies"] = {
        "C4_in_K4": count_copies(nx.complete_graph(4), c4),
        "C6_in_K33": count_copies(nx.complete_bipartite_graph(3, 3), nx.cycle_graph(6)),
        "K23_in_K23": count_copies(nx.complete_bipartite_graph(2, 3), nx.complete_bipartite_graph(2, 3)),
        "C4_in_K5": count_copies(nx.complete_graph(5), c4),
        "C6_in_K6": count_copies(nx.complete_graph(6), nx.cycle_graph(6)),
        "theta33_in_K8": count_copies(nx.complete_graph(8), nx.Graph(theta_edges(3, 3))),
    }
    frozen["ex"] = {
        "K4_C4": brute_ex(nx.complete_graph(4), c4),
        "K5_C4": brute_ex(nx.complete_graph(5), c4),
        "K6_C4": brute_ex(nx.complete_graph(6), c4),
    }
    frozen["codegree"] = codegree_values()
    path = pathlib.Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps(frozen, indent=1, sort_keys=True) + "\n")
    print(json.dumps(frozen, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
