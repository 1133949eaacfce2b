"""relyroute: tree-routing overlay graphs and exact routing-reliability polynomials."""

__version__ = "0.1.0"

from ._kernel import BACKEND
from .addressing import AddressMap, allocate_addresses, default_bits, level_of_divergence
from .graph import (Graph, GraphError, LinkModel, MatrixParseError, is_connected,
                    min_cut_size, parse_adjacency_matrix, serialize_adjacency_matrix)
from .reliability import (ComputeBudgetError, CutSetCounts, FlowWeights,
                          ReliabilityPolynomial, ReliabilityReport,
                          brute_force_reliability, enumerate_cut_counts,
                          mean_reliability, monte_carlo_reliability,
                          recursive_unreliability, symbolic_polynomial,
                          terminal_pair_reliability)
from .routing import (ATR, DART, PathSet, RouteEntry, RoutingTables, build_tables,
                      discover_paths, overlay_graph, pair_overlay_arcs)
from .topology import (GeometricScenario, connected_or_retry, fixture_fig2,
                       full_mesh, random_geometric)

__all__ = [
    "ATR", "AddressMap", "BACKEND", "ComputeBudgetError", "CutSetCounts", "DART",
    "FlowWeights", "GeometricScenario", "Graph", "GraphError", "LinkModel",
    "MatrixParseError", "PathSet", "ReliabilityPolynomial", "ReliabilityReport",
    "RouteEntry", "RoutingTables", "allocate_addresses", "brute_force_reliability",
    "build_tables", "connected_or_retry", "default_bits", "discover_paths",
    "enumerate_cut_counts", "fixture_fig2", "full_mesh", "is_connected",
    "level_of_divergence", "mean_reliability", "min_cut_size",
    "monte_carlo_reliability", "overlay_graph", "pair_overlay_arcs",
    "parse_adjacency_matrix", "random_geometric", "recursive_unreliability",
    "serialize_adjacency_matrix", "symbolic_polynomial",
    "terminal_pair_reliability",
]
