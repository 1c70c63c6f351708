"""
Capacity bounds: no CSIT, full lookahead CSIT and the feedback outer bound.
"""

from .permutations import PermutationSet
from .regions import full_lookahead_polygon, region_cof_outer, region_full_lookahead, region_no_csit
from .supports import support_cof_outer, support_cof_permutation, support_full_lookahead, support_no_csit

__all__ = [
    "PermutationSet",
    "support_no_csit",
    "support_full_lookahead",
    "support_cof_permutation",
    "support_cof_outer",
    "region_full_lookahead",
    "full_lookahead_polygon",
    "region_no_csit",
    "region_cof_outer",
]
