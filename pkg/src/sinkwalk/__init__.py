"""Maze solving with a Grover walk that leaks through a sink at the start vertex."""

from .graph import (
    DecoratedGraph,
    GraphError,
    SinkPlacement,
    SymmetricDigraph,
    bfs_shortest_path,
    betti_number,
    decorate,
    is_bipartite,
    make_ladder,
    make_random_tree,
    parse_edge_list,
    parse_grid_maze,
)
from .spectral import (
    NavigationVector,
    SpectralReport,
    connecting_threshold,
    extract_path,
    limit_distribution,
    minus_one_eigenspace,
    navigation_vector,
    unimodular_obstruction,
)
from .walk import converge_power, finding_probability, grover_step, initial_state, iterate, project_sink

__all__ = [
    "DecoratedGraph",
    "GraphError",
    "NavigationVector",
    "SinkPlacement",
    "SpectralReport",
    "SymmetricDigraph",
    "betti_number",
    "bfs_shortest_path",
    "converge_power",
    "decorate",
    "connecting_threshold",
    "extract_path",
    "finding_probability",
    "grover_step",
    "initial_state",
    "is_bipartite",
    "iterate",
    "limit_distribution",
    "make_ladder",
    "make_random_tree",
    "minus_one_eigenspace",
    "navigation_vector",
    "parse_edge_list",
    "parse_grid_maze",
    "project_sink",
    "unimodular_obstruction",
]
