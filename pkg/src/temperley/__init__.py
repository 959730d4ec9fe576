"""Spanning trees and perfect matchings on plane maps.

Weighted arborescences of a plane map G rooted at v* correspond one to
one with perfect matchings of the overlay graph H(G) with v* and an
incident face f* removed.  The package builds both sides, counts them
exactly, samples them, and reads off heights and winding.
"""

from .bijection import (Arborescence, PerfectMatching, matching_to_tree, parse_matching, parse_tree,
                        rebase_matching, tree_to_matching)
from .exact_count import (count_arborescences, enumerate_arborescences, enumerate_matchings,
                          matching_weight_sum)
from .heights import compute_heights, winding_heights, winding_turns
from .overlay import build_overlay, restrict
from .planar_map import Dart, PlanarMap, format_map, map_from_edges, parse_map
from .sampler import WilsonSampler, sample_matching, wilson_sample

__all__ = [
    "Arborescence", "PerfectMatching", "matching_to_tree", "parse_matching", "parse_tree",
    "rebase_matching", "tree_to_matching", "count_arborescences", "enumerate_arborescences",
    "enumerate_matchings", "matching_weight_sum", "compute_heights", "winding_heights",
    "winding_turns", "build_overlay", "restrict", "Dart", "PlanarMap", "format_map",
    "map_from_edges", "parse_map", "WilsonSampler", "sample_matching", "wilson_sample",
]
