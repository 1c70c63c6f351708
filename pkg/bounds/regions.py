#!/usr/bin/env python
"""
Reference regions as half-planes or two-user polygons.
"""

import logging
from functools import partial

import numpy as np

from channel.stats import ChannelStats, nonempty_subsets
from geometry.region import DEFAULT_SWEEP, intersect_regions, region_from_halfplanes, region_from_support
from geometry.types import HalfPlane, RegionPolygon, Weights

from .permutations import PermutationSet
from .supports import support_cof_permutation, support_no_csit

logger = logging.getLogger(__name__)


def _require_two_users(stats: ChannelStats) -> None:
    if stats.K != 2:
        raise ValueError(f"regions are polygonized for K=2 only, got K={stats.K}")


def region_full_lookahead(stats: ChannelStats) -> list[HalfPlane]:
    """One constraint sum_{u in S} R_u <= E[max_{u in S} N_u] per nonempty S."""
    planes = []
    for subset in nonempty_subsets(stats.K):
        indicator = np.zeros(stats.K)
        indicator[sorted(subset)] = 1.0
        planes.append(HalfPlane(Weights(tuple(indicator)), stats.expected_max(subset)))
    return planes


def full_lookahead_polygon(stats: ChannelStats) -> RegionPolygon:
    _require_two_users(stats)
    return region_from_halfplanes(region_full_lookahead(stats))


def region_no_csit(stats: ChannelStats, sweep_count: int = DEFAULT_SWEEP) -> RegionPolygon:
    _require_two_users(stats)
    region = region_from_support(partial(support_no_csit, stats), sweep_count)
    logger.debug(f"no-CSIT region: {region}")
    return region


def region_cof_outer(stats: ChannelStats, sweep_count: int = DEFAULT_SWEEP) -> RegionPolygon:
    """Intersection of the per-ordering polygons; its support is the minimum bound."""
    _require_two_users(stats)
    polygons = [
        region_from_support(partial(support_cof_permutation, stats, perm=perm), sweep_count)
        for perm in PermutationSet(stats.K)
    ]
    region = intersect_regions(*polygons)
    logger.debug(f"COF outer region: {region}")
    return region
