#!/usr/bin/env python
"""
Cross-scheme checks used by the compare report.
"""

import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

from bounds.supports import support_cof_outer, support_no_csit
from channel.stats import ChannelStats
from geometry.region import contains, support, sweep_angles
from geometry.types import RegionPolygon, Weights

logger = logging.getLogger(__name__)

# Expected order of inclusion, innermost first.
INCLUSION_CHAIN = ("ach1", "idle", "intra", "inter", "cof_outer")
INCLUSION_SLACK = 1e-6


@dataclass(frozen=True)
class InclusionVerdict:
    inner: str
    outer: str
    holds: bool
    worst_corner: tuple[float, float] | None = None
    """First corner of `inner` found outside `outer`."""


def check_inclusion(inner: RegionPolygon, outer: RegionPolygon, tol: float = INCLUSION_SLACK) -> tuple[float, float] | None:
    """First corner of `inner` outside `outer`, or None when every corner is inside."""
    for corner in inner.corners:
        if not contains(outer, corner, tol=tol):
            return corner.r
    return None


def inclusion_verdicts(
    regions: Mapping[str, RegionPolygon], chain: Sequence[str] = INCLUSION_CHAIN
) -> list[InclusionVerdict]:
    """Check each consecutive pair of the chain that is present in `regions`."""
    present = [name for name in chain if name in regions]
    verdicts = []
    for inner, outer in zip(present, present[1:]):
        outside = check_inclusion(regions[inner], regions[outer])
        verdict = InclusionVerdict(inner, outer, outside is None, outside)
        if not verdict.holds:
            logger.warning(f"{inner} is not inside {outer}: corner {outside} lies outside")
        verdicts.append(verdict)
    return verdicts


@dataclass(frozen=True)
class SupportGap:
    angle: float
    """Degrees."""
    value: float


def max_support_gap(
    inner: Callable[[Weights], float], outer: Callable[[Weights], float], sweep_count: int
) -> SupportGap:
    """Largest outer(w) - inner(w) over unit weights on the quarter circle."""
    best = SupportGap(angle=0.0, value=-math.inf)
    for theta in sweep_angles(sweep_count):
        w = Weights.from_angle(theta)
        gap = outer(w) - inner(w)
        if gap > best.value:
            best = SupportGap(angle=math.degrees(theta), value=gap)
    return best


def region_gap(inner: RegionPolygon, outer: RegionPolygon, sweep_count: int) -> SupportGap:
    return max_support_gap(lambda w: support(inner, w), lambda w: support(outer, w), sweep_count)


def feedback_gain(stats: ChannelStats, sweep_count: int) -> SupportGap:
    """Largest room feedback could add: feedback outer bound minus the no-CSIT capacity."""
    return max_support_gap(
        lambda w: support_no_csit(stats, w), lambda w: support_cof_outer(stats, w), sweep_count
    )
