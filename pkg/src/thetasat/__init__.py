"""Balanced supersaturation and random Turan tooling for theta graphs."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    EmptyGraph,
    EmptyHypergraph,
    EmptyWeight,
    Exhausted,
    Failure,
    InvalidAssignment,
    ThetaSatError,
    Truncated,
)
from .exact import Alg, ceil_log2
from .graph_core import Assignment, Graph, MultiGraph, ThetaPattern, is_valid, project, two_density
from .hypergraph import Codegree, CodegreeParams, GHypergraph, is_good, simplified_bound_check
from .pruning import min_degree_core, remove_saturated_edges, scale_parameters, weighted_core
from .expansion import epsilon_schedule, refine_paths, verify_expansion, x_set
from .supersat import CollectionFamily, SupersatConfig, compatible, edge_hypergraph, supersaturate
from .containers import UniformHypergraph, build_containers, codegree_delta, gnp_upper_bound, iterate_containers
from .oracle import enumerate_theta, exact_ex, exponent_table, verify_cover

__all__ = [
    "DomainError",
    "EmptyGraph",
    "EmptyHypergraph",
    "EmptyWeight",
    "Exhausted",
    "Failure",
    "InvalidAssignment",
    "ThetaSatError",
    "Truncated",
    "Alg",
    "ceil_log2",
    "Assignment",
    "Graph",
    "MultiGraph",
    "ThetaPattern",
    "is_valid",
    "project",
    "two_density",
    "Codegree",
    "CodegreeParams",
    "GHypergraph",
    "is_good",
    "simplified_bound_check",
    "min_degree_core",
    "remove_saturated_edges",
    "scale_parameters",
    "weighted_core",
    "epsilon_schedule",
    "refine_paths",
    "verify_expansion",
    "x_set",
    "CollectionFamily",
    "SupersatConfig",
    "compatible",
    "edge_hypergraph",
    "supersaturate",
    "UniformHypergraph",
    "build_containers",
    "codegree_delta",
    "gnp_upper_bound",
    "iterate_containers",
    "enumerate_theta",
    "exact_ex",
    "exponent_table",
    "verify_cover",
]
