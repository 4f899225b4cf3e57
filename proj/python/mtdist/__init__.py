"""Path mapping distance between merge trees."""

from ._mtdist import (
    GridError,
    MergeTree,
    ParseError,
    TreeError,
    distance,
    distance_matrix,
    distance_with_mapping,
    format_tree,
    join_tree,
    parse_tree,
    random_tree,
    simplify,
    split_tree,
)

__all__ = [
    "GridError",
    "MergeTree",
    "ParseError",
    "TreeError",
    "distance",
    "distance_matrix",
    "distance_with_mapping",
    "format_tree",
    "join_tree",
    "parse_tree",
    "random_tree",
    "simplify",
    "split_tree",
]
