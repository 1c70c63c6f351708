#!/usr/bin/env python
"""
Region polygons for every scheme and bound, plus the corner report.

Bounds and Ach1 have closed-form supports and go through
`region_from_support`. The coding variants are swept: one weighted-rate
search per direction, hulled together with the two single-user ARQ
points. After the sweep every frontier edge is queried along its own
normal, and points beating the edge are added until the hull stops
growing, so narrow corners missed by the sweep are still found.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from bounds.regions import full_lookahead_polygon, region_cof_outer, region_no_csit
from channel.stats import ChannelStats
from geometry.region import convex_hull, region_from_support, supporting_angles
from geometry.types import DEDUP_TOLERANCE, RatePoint, RegionPolygon, Weights
from schemes.ach1 import ach1_support
from schemes.ach2 import VARIANTS
from schemes.types import Allocation

from .config import SearchConfig
from .search import maximize_weighted_rate

logger = logging.getLogger(__name__)

BOUND_SCHEMES = ("no_csit", "full_la", "cof_outer")
SCHEMES = (*BOUND_SCHEMES, "ach1", *VARIANTS)

# Command-line spelling of each scheme.
SCHEME_ALIASES = {
    "no-csit": "no_csit",
    "full-la": "full_la",
    "cof-outer": "cof_outer",
    "ach1": "ach1",
    "ach2-idle": "idle",
    "ach2-intra": "intra",
    "ach2-inter": "inter",
}

# Gain over an edge's support that makes a refinement point worth keeping.
REFINE_GAIN = 1e-9


def resolve_scheme(name: str) -> str:
    """Map a command-line or internal scheme name to its internal name."""
    if name in SCHEMES:
        return name
    try:
        return SCHEME_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown scheme '{name}', expected one of {sorted(SCHEME_ALIASES)}") from None


def variant_sweep_angles(count: int) -> np.ndarray:
    """Midpoints of `count` equal slices of [0, pi/2]."""
    return (np.arange(count) + 0.5) * (math.pi / 2) / count


@dataclass(frozen=True)
class SweepPoint:
    angle: float
    """Search direction in radians."""
    alloc: Allocation | None
    rates: RatePoint


@dataclass(frozen=True)
class RegionTrace:
    scheme: str
    region: RegionPolygon
    points: tuple[SweepPoint, ...] = ()
    """Search results behind a coding-variant region; empty for closed-form ones."""


def _single_user_points(stats: ChannelStats) -> list[SweepPoint]:
    _, _, expected = stats.layer_arrays()
    return [
        SweepPoint(angle=0.0, alloc=None, rates=RatePoint((float(expected[0]), 0.0))),
        SweepPoint(angle=math.pi / 2, alloc=None, rates=RatePoint((0.0, float(expected[1])))),
    ]


def _edge_normal(a: RatePoint, b: RatePoint) -> Weights | None:
    normal = np.array([a[1] - b[1], b[0] - a[0]])
    length = float(np.hypot(*normal))
    if length <= DEDUP_TOLERANCE:
        return None
    normal = np.clip(normal / length, 0.0, None)
    if not normal.any():
        return None
    return Weights(tuple(normal))


def _trace_variant(stats: ChannelStats, variant: str, cfg: SearchConfig) -> RegionTrace:
    points = _single_user_points(stats)

    def query(w: Weights) -> SweepPoint:
        alloc, rates = maximize_weighted_rate(stats, variant, w, cfg)
        logger.debug(f"{variant} at {math.degrees(w.angle):.3f} deg: {rates} from {alloc}")
        return SweepPoint(angle=w.angle, alloc=alloc, rates=rates)

    for theta in variant_sweep_angles(cfg.sweep_angles):
        points.append(query(Weights.from_angle(theta)))

    queried: set[tuple] = set()
    for round_ in range(cfg.refine_rounds):
        frontier = convex_hull(p.rates for p in points).frontier
        added = 0
        for a, b in zip(frontier, frontier[1:]):
            key = (a.r, b.r)
            w = _edge_normal(a, b)
            if w is None or key in queried:
                continue
            queried.add(key)
            found = query(w)
            if found.rates.dot(w) > a.dot(w) + REFINE_GAIN:
                points.append(found)
                added += 1
        logger.debug(f"{variant} refinement round {round_ + 1}: {added} new points")
        if not added:
            break

    region = convex_hull(p.rates for p in points)
    return RegionTrace(scheme=variant, region=region, points=tuple(points))


def trace_region(stats: ChannelStats, scheme: str, cfg: SearchConfig | None = None) -> RegionTrace:
    """Build one scheme's region together with the search points behind it."""
    scheme = resolve_scheme(scheme)
    cfg = cfg or SearchConfig()
    if stats.K != 2:
        raise ValueError(f"regions are built for two users, channel has K={stats.K}")

    if scheme == "no_csit":
        trace = RegionTrace(scheme, region_no_csit(stats, cfg.sweep_count))
    elif scheme == "full_la":
        trace = RegionTrace(scheme, full_lookahead_polygon(stats))
    elif scheme == "cof_outer":
        trace = RegionTrace(scheme, region_cof_outer(stats, cfg.sweep_count))
    elif scheme == "ach1":
        trace = RegionTrace(scheme, region_from_support(partial(ach1_support, stats), cfg.sweep_count))
    else:
        trace = _trace_variant(stats, scheme, cfg)
    logger.info(f"Built {scheme} region with {len(trace.region)} corners")
    return trace


def build_region(stats: ChannelStats, scheme: str, cfg: SearchConfig | None = None) -> RegionPolygon:
    return trace_region(stats, scheme, cfg).region


@dataclass(frozen=True)
class CornerRow:
    scheme: str
    r1: float
    r2: float
    angle: float
    """Degrees: the search direction that found the corner, else the bisector of its normal cone."""
    allocation: str


def format_allocation(alloc: Allocation | None) -> str:
    if alloc is None:
        return "-"
    return " / ".join(" ".join(f"{v:.6f}" for v in row) for row in alloc.k)


def corner_rows(trace: RegionTrace) -> list[CornerRow]:
    """One row per frontier corner, axis endpoints included."""
    rows = []
    for corner, bisector in supporting_angles(trace.region):
        match = next((p for p in trace.points if p.rates.distance(corner) <= DEDUP_TOLERANCE), None)
        if match is not None and match.alloc is not None:
            angle, allocation = math.degrees(match.angle), format_allocation(match.alloc)
        else:
            angle, allocation = bisector, "-"
        rows.append(CornerRow(trace.scheme, corner[0], corner[1], angle, allocation))
    return rows
