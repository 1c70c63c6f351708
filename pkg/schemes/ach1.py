#!/usr/bin/env python
"""
Per-layer two-user feedback scheme run independently on every layer.

On layer q the rate pair (x, y) must satisfy
    x / m + y / p2 <= 1   and   x / p1 + y / m <= 1
with p_u = Pr[N_u >= q] and m = Pr[max(N_1, N_2) >= q]. Each layer's feasible
set is a polygon with at most four vertices, so its support is exact.
"""

from collections.abc import Sequence

import numpy as np

from channel.stats import ChannelStats
from geometry.types import Weights

SINGULAR = 1e-15


def ach1_layer_vertices(p1: float, p2: float, m: float) -> list[tuple[float, float]]:
    """Vertices of one layer's feasible rate polygon."""
    if m <= 0.0:
        return [(0.0, 0.0)]
    vertices = [(0.0, 0.0), (p1, 0.0), (0.0, p2)]
    if p1 > 0.0 and p2 > 0.0:
        system = np.array([[1.0 / m, 1.0 / p2], [1.0 / p1, 1.0 / m]])
        if abs(np.linalg.det(system)) > SINGULAR:
            x, y = np.linalg.solve(system, np.ones(2))
            if x >= 0.0 and y >= 0.0:
                vertices.append((float(x), float(y)))
    return vertices


def ach1_support(stats: ChannelStats, w: Weights | Sequence[float]) -> float:
    p, m, _ = stats.layer_arrays()
    w1, w2 = np.asarray(w, dtype=float).ravel()
    total = 0.0
    for q in range(stats.Q):
        total += max(w1 * x + w2 * y for x, y in ach1_layer_vertices(p[0, q], p[1, q], m[q]))
    return float(total)
