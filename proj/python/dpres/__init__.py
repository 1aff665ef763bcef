"""Exact distance preservers and lower-bound instance builders."""

from ._core import (
    DpresError,
    Graph,
    build_dw_preserver,
    build_uu_preserver,
    cli,
    consistent_paths,
    count_branching_triples,
    obstacle_instance,
    parse_graph,
    random_instance,
    serialize_graph,
    shortest_distance,
    verify_preserver,
)

__all__ = [
    "DpresError",
    "Graph",
    "build_dw_preserver",
    "build_uu_preserver",
    "cli",
    "consistent_paths",
    "count_branching_triples",
    "obstacle_instance",
    "parse_graph",
    "random_instance",
    "serialize_graph",
    "shortest_distance",
    "verify_preserver",
]
