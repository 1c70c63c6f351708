#!/usr/bin/env python
"""
Rate-space value types.

Users are 0-based: `r[0]` is the rate of user 1. Regions are 2-user
polygons; weights and rate points work for any K.
"""

import math
from dataclasses import dataclass

import numpy as np

# Tolerances shared by the polygon routines.
DEDUP_TOLERANCE = 1e-9
NEGATIVE_SLACK = 1e-12


def _as_tuple(values, name: str) -> tuple[float, ...]:
    data = tuple(float(v) for v in np.ravel(values))
    if not data:
        raise ValueError(f"{name} must have at least one component")
    if not all(math.isfinite(v) for v in data):
        raise ValueError(f"{name} has non-finite components: {data}")
    return data


@dataclass(frozen=True)
class Weights:
    w: tuple[float, ...]
    """Nonnegative weight per user."""

    def __post_init__(self):
        w = _as_tuple(self.w, "weights")
        if any(v < 0 for v in w):
            raise ValueError(f"weights must be nonnegative, got {w}")
        if not any(v > 0 for v in w):
            raise ValueError("weights must not be all zero")
        object.__setattr__(self, "w", w)

    @classmethod
    def from_angle(cls, theta: float) -> "Weights":
        """Unit weight (cos theta, sin theta) for theta in [0, pi/2]."""
        return cls((max(math.cos(theta), 0.0), max(math.sin(theta), 0.0)))

    @property
    def K(self) -> int:
        return len(self.w)

    @property
    def angle(self) -> float:
        """Direction in radians (2 users only)."""
        return math.atan2(self.w[1], self.w[0])

    def scaled(self, alpha: float) -> "Weights":
        return Weights(tuple(alpha * v for v in self.w))

    def __getitem__(self, index: int) -> float:
        return self.w[index]

    def __len__(self) -> int:
        return len(self.w)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.w, dtype=dtype)


@dataclass(frozen=True)
class RatePoint:
    r: tuple[float, ...]
    """Packets per slot, per user."""

    def __post_init__(self):
        r = _as_tuple(self.r, "rate point")
        if any(v < -NEGATIVE_SLACK for v in r):
            raise ValueError(f"rates must be nonnegative, got {r}")
        object.__setattr__(self, "r", tuple(max(v, 0.0) for v in r))

    @property
    def K(self) -> int:
        return len(self.r)

    def dot(self, w: Weights) -> float:
        if len(w) != len(self.r):
            raise ValueError(f"weights for K={len(w)} applied to a K={len(self.r)} point")
        return float(sum(a * b for a, b in zip(w.w, self.r)))

    def distance(self, other: "RatePoint") -> float:
        return math.dist(self.r, other.r)

    def __getitem__(self, index: int) -> float:
        return self.r[index]

    def __len__(self) -> int:
        return len(self.r)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.r, dtype=dtype)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{v:.4f}" for v in self.r) + ")"


@dataclass(frozen=True)
class HalfPlane:
    """The set { r : w . r <= b }."""

    w: Weights
    b: float

    def __post_init__(self):
        b = float(self.b)
        if not math.isfinite(b) or b < -NEGATIVE_SLACK:
            raise ValueError(f"half-plane bound must be finite and >= 0, got {b}")
        object.__setattr__(self, "b", max(b, 0.0))

    def contains(self, p: RatePoint, tol: float = 0.0) -> bool:
        return p.dot(self.w) <= self.b + tol

    def __str__(self) -> str:
        terms = " + ".join(f"{v:g}*R{u + 1}" for u, v in enumerate(self.w.w) if v)
        return f"{terms} <= {self.b:.6f}"


@dataclass(frozen=True)
class RegionPolygon:
    """Convex, downward-closed 2-user region.

    `corners` run counterclockwise from (0, max r2); for a full-dimensional
    region the origin is the second corner.
    """

    corners: tuple[RatePoint, ...]

    def __post_init__(self):
        corners = tuple(c if isinstance(c, RatePoint) else RatePoint(c) for c in self.corners)
        if not corners:
            raise ValueError("a region needs at least one corner")
        if any(c.K != 2 for c in corners):
            raise ValueError("regions are polygonized for two users only")
        object.__setattr__(self, "corners", corners)

    @property
    def points(self) -> np.ndarray:
        return np.array([c.r for c in self.corners], dtype=float)

    @property
    def max_rates(self) -> tuple[float, float]:
        pts = self.points
        return float(pts[:, 0].max()), float(pts[:, 1].max())

    @property
    def frontier(self) -> tuple[RatePoint, ...]:
        """Outer boundary from (0, max r2) to (max r1, 0) with r1 increasing."""
        x_max, y_max = self.max_rates
        inner = sorted(
            (c for c in self.corners if c[0] > DEDUP_TOLERANCE and c[1] > DEDUP_TOLERANCE),
            key=lambda c: (c[0], -c[1]),
        )
        path = [RatePoint((0.0, y_max)), *inner, RatePoint((x_max, 0.0))]
        if path[0].distance(path[-1]) <= DEDUP_TOLERANCE:
            path = path[:1]
        return tuple(path)

    def halfplanes(self) -> list[HalfPlane]:
        """Frontier edges plus the r1 <= max r1 and r2 <= max r2 caps."""
        x_max, y_max = self.max_rates
        planes = [HalfPlane(Weights((1.0, 0.0)), x_max), HalfPlane(Weights((0.0, 1.0)), y_max)]
        path = self.frontier
        for a, b in zip(path, path[1:]):
            normal = np.array([a[1] - b[1], b[0] - a[0]])
            length = float(np.hypot(*normal))
            if length <= DEDUP_TOLERANCE:
                continue
            normal = np.clip(normal / length, 0.0, None)
            if not normal.any():
                continue
            planes.append(HalfPlane(Weights(tuple(normal)), float(normal @ np.asarray(a))))
        return planes

    def __len__(self) -> int:
        return len(self.corners)

    def __str__(self) -> str:
        return "RegionPolygon[" + ", ".join(str(c) for c in self.corners) + "]"
