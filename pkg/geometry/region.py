#!/usr/bin/env python
"""
Polygon construction for 2-user rate regions.

Regions come from three sources: a support function swept over weight
directions, an explicit list of half-planes, or a cloud of achievable points.
All three end in `convex_hull`, which fixes the canonical corner order.
"""

import logging
import math
from collections.abc import Callable, Iterable, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .types import DEDUP_TOLERANCE, NEGATIVE_SLACK, HalfPlane, RatePoint, RegionPolygon, Weights

logger = logging.getLogger(__name__)

DEFAULT_SWEEP = 2048
MIN_SWEEP = 8
PARALLEL_TOLERANCE = 1e-12
# Minimum turning angle (radians, as a sine) for a hull vertex to count as a corner.
CORNER_TURN = 1e-6
# Relative rounding floor for boundary tests in `contains`.
CONTAINS_FLOOR = 1e-12

SupportFunction = Callable[[Weights], float]


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _hull_ring(points: np.ndarray) -> list[np.ndarray]:
    """Counterclockwise hull vertices; a collinear cloud gives its two extremes."""
    pts = np.unique(points, axis=0)
    if len(pts) >= 3:
        try:
            hull = ConvexHull(pts)
        except QhullError:
            logger.debug(f"Qhull rejected {len(pts)} points as degenerate; using the segment they span")
        else:
            return [pts[i] for i in hull.vertices]
    # np.unique sorts lexicographically, so a collinear cloud has its extremes first and last
    return [pts[0]] if len(pts) == 1 else [pts[0], pts[-1]]


def _drop_near_duplicates(ring: list[np.ndarray]) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for p in ring:
        if kept and np.hypot(*(p - kept[-1])) <= DEDUP_TOLERANCE:
            continue
        kept.append(p)
    while len(kept) > 1 and np.hypot(*(kept[0] - kept[-1])) <= DEDUP_TOLERANCE:
        kept.pop()
    return kept


def _drop_flat_vertices(ring: list[np.ndarray]) -> list[np.ndarray]:
    """Remove vertices whose adjacent edges turn by less than CORNER_TURN."""
    changed = True
    while changed and len(ring) > 2:
        changed = False
        for i in range(len(ring)):
            prev, cur, nxt = ring[i - 1], ring[i], ring[(i + 1) % len(ring)]
            a, b = cur - prev, nxt - cur
            scale = np.hypot(*a) * np.hypot(*b)
            if scale <= 0.0 or abs(_cross(prev, cur, nxt)) <= CORNER_TURN * scale:
                del ring[i]
                changed = True
                break
    return ring


def _canonical_start(ring: list[np.ndarray]) -> list[np.ndarray]:
    x_min = min(p[0] for p in ring)
    start = max(
        (i for i, p in enumerate(ring) if p[0] <= x_min + DEDUP_TOLERANCE),
        key=lambda i: ring[i][1],
    )
    return ring[start:] + ring[:start]


def convex_hull(points: Iterable[RatePoint | Sequence[float]]) -> RegionPolygon:
    """Downward-closed convex hull: points, their axis projections and the origin."""
    pts = np.array([tuple(p) for p in points], dtype=float).reshape(-1, 2)
    if pts.size == 0:
        raise ValueError("convex_hull needs at least one point")
    if np.any(pts < -NEGATIVE_SLACK) or not np.all(np.isfinite(pts)):
        raise ValueError("rate points must be finite and nonnegative")
    pts = np.clip(pts, 0.0, None)

    x_axis = np.column_stack([pts[:, 0], np.zeros(len(pts))])
    y_axis = np.column_stack([np.zeros(len(pts)), pts[:, 1]])
    cloud = np.vstack([pts, x_axis, y_axis, [[0.0, 0.0]]])

    ring = _drop_near_duplicates(_hull_ring(cloud))
    ring = _drop_flat_vertices(ring)
    ring = _canonical_start(ring)
    return RegionPolygon(tuple(RatePoint(tuple(p)) for p in ring))


def _unit_line(plane: HalfPlane) -> tuple[float, float, float]:
    a, b = plane.w.w
    norm = math.hypot(a, b)
    return a / norm, b / norm, plane.b / norm


def _intersect(l1: tuple[float, float, float], l2: tuple[float, float, float]) -> np.ndarray | None:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if abs(det) < PARALLEL_TOLERANCE:
        return None
    return np.array([(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det])


def region_from_halfplanes(
    halfplanes: Iterable[HalfPlane], *, drop_sweep_artifacts: bool = False
) -> RegionPolygon:
    """Intersection of { w.r <= b } with the positive quadrant.

    Lines are processed by decreasing normal angle, which walks the boundary
    from the r2 axis down to the r1 axis. With `drop_sweep_artifacts`, an
    intersection made by exactly two lines that sits between two vertices
    shared by three or more lines is dropped: for a polygonal region it is the
    kink produced by two neighbouring sweep directions straddling an edge normal.
    """
    planes = list(halfplanes)
    if any(p.w.K != 2 for p in planes):
        raise ValueError("half-plane intersection is implemented for two users only")

    lines = sorted((_unit_line(p) for p in planes), key=lambda l: -math.atan2(l[1], l[0]))
    merged: list[tuple[float, float, float]] = []
    for line in lines:
        if merged and abs(math.atan2(line[1], line[0]) - math.atan2(merged[-1][1], merged[-1][0])) < PARALLEL_TOLERANCE:
            if line[2] < merged[-1][2]:
                merged[-1] = line
            continue
        merged.append(line)

    sequence = [(-1.0, 0.0, 0.0), *merged, (0.0, -1.0, 0.0)]
    stack: list[tuple[float, float, float]] = []
    for line in sequence:
        while len(stack) >= 2:
            x = _intersect(stack[-2], stack[-1])
            if x is not None and line[0] * x[0] + line[1] * x[1] > line[2] + NEGATIVE_SLACK * max(1.0, abs(line[2])):
                stack.pop()
            else:
                break
        stack.append(line)

    vertices = [_intersect(stack[i], stack[i + 1]) for i in range(len(stack) - 1)]
    vertices = [v for v in vertices if v is not None]
    groups: list[list] = []
    for v in vertices:
        if groups and np.hypot(*(v - groups[-1][0])) <= DEDUP_TOLERANCE:
            groups[-1][1] += 1
        else:
            groups.append([v, 1])

    if drop_sweep_artifacts and len(groups) >= 3:
        keep = [True] * len(groups)
        for i in range(1, len(groups) - 1):
            if groups[i][1] == 1 and groups[i - 1][1] >= 2 and groups[i + 1][1] >= 2:
                keep[i] = False
        dropped = keep.count(False)
        if dropped:
            logger.debug(f"Dropped {dropped} sweep artifact vertices")
        groups = [g for g, k in zip(groups, keep) if k]

    return convex_hull(np.clip(np.array([g[0] for g in groups]), 0.0, None))


def sweep_angles(sweep_count: int) -> np.ndarray:
    """Uniform angles on [0, pi/2], endpoints included."""
    if sweep_count < MIN_SWEEP:
        raise ValueError(f"sweep_count must be >= {MIN_SWEEP}, got {sweep_count}")
    return np.linspace(0.0, math.pi / 2, sweep_count)


def region_from_support(f: SupportFunction, sweep_count: int = DEFAULT_SWEEP) -> RegionPolygon:
    """Polygon { r >= 0 : w.r <= f(w) for every swept w }."""
    planes = []
    for theta in sweep_angles(sweep_count):
        w = Weights.from_angle(theta)
        value = float(f(w))
        if not math.isfinite(value) or value < -NEGATIVE_SLACK:
            raise ValueError(f"support function returned {value} at angle {theta:.6f}")
        planes.append(HalfPlane(w, value))
    return region_from_halfplanes(planes, drop_sweep_artifacts=True)


def intersect_regions(*regions: RegionPolygon) -> RegionPolygon:
    """Intersection of downward-closed convex regions."""
    if not regions:
        raise ValueError("intersect_regions needs at least one region")
    planes = [plane for region in regions for plane in region.halfplanes()]
    return region_from_halfplanes(planes)


def contains(region: RegionPolygon, p: RatePoint | Sequence[float], tol: float = 0.0) -> bool:
    """True iff p lies inside the region or within `tol` of its boundary.

    Distances below CONTAINS_FLOOR times the coordinate scale count as zero,
    so points on the boundary of a segment or polygon are inside at tol=0.
    """
    q = np.asarray(tuple(p), dtype=float)
    pts = region.points
    scale = max(1.0, float(np.abs(pts).max()), float(np.abs(q).max()))
    eps = max(tol, CONTAINS_FLOOR * scale)
    if np.any(q < -eps):
        return False
    if len(pts) == 1:
        return bool(np.hypot(*(q - pts[0])) <= eps)
    if len(pts) == 2:
        a, b = pts
        length = float(np.hypot(*(b - a)))
        if abs(_cross(a, b, q)) > eps * length:
            return False
        along = float(np.dot(q - a, b - a)) / length
        return -eps <= along <= length + eps

    lo, hi = pts.min(axis=0) - eps, pts.max(axis=0) + eps
    if np.any(q < lo) or np.any(q > hi):
        return False
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        length = float(np.hypot(*(b - a)))
        if _cross(a, b, q) < -eps * length:
            return False
    return True


def support(region: RegionPolygon, w: Weights) -> float:
    """max over the region of w.r, attained at a corner."""
    return float(max(c.dot(w) for c in region.corners))


def supporting_angles(region: RegionPolygon) -> list[tuple[RatePoint, float]]:
    """Each frontier corner with the bisector (degrees) of its normal cone."""
    path = region.frontier
    normals = []
    for a, b in zip(path, path[1:]):
        normals.append(math.atan2(b[0] - a[0], a[1] - b[1]))
    result = []
    for i, corner in enumerate(path):
        upper = normals[i - 1] if i > 0 else math.pi / 2
        lower = normals[i] if i < len(normals) else 0.0
        result.append((corner, math.degrees(0.5 * (upper + lower))))
    return result


def hausdorff(a: RegionPolygon, b: RegionPolygon) -> float:
    """Hausdorff distance between the two corner sets."""
    pa, pb = a.points, b.points
    d = np.hypot(pa[:, None, 0] - pb[None, :, 0], pa[:, None, 1] - pb[None, :, 1])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
