"""
Rate-region geometry: weights, rate points and convex downward-closed polygons.
"""

from .export import RegionFormatError, format_corner_csv, read_corner_csv, render_svg, write_corner_csv
from .region import (
    DEFAULT_SWEEP,
    contains,
    convex_hull,
    hausdorff,
    intersect_regions,
    region_from_halfplanes,
    region_from_support,
    support,
    supporting_angles,
    sweep_angles,
)
from .types import DEDUP_TOLERANCE, HalfPlane, RatePoint, RegionPolygon, Weights

__all__ = [
    "DEDUP_TOLERANCE",
    "DEFAULT_SWEEP",
    "Weights",
    "RatePoint",
    "HalfPlane",
    "RegionPolygon",
    "convex_hull",
    "region_from_halfplanes",
    "region_from_support",
    "intersect_regions",
    "sweep_angles",
    "contains",
    "support",
    "supporting_angles",
    "hausdorff",
    "format_corner_csv",
    "write_corner_csv",
    "read_corner_csv",
    "render_svg",
    "RegionFormatError",
]
