#!/usr/bin/env python
"""
Linear-program form of the coding variants.

Fixing the total time to one, every variant becomes a set of linear
constraints on (k, T1, T2): T1 bounds each layer's uncoded time, T2 the
coded time of both users, and T1 + T2 <= 1. Maximizing w.k over that
polytope gives the exact support of the variant's region, since a
feasible point always re-evaluates to rates at least k.

Variables are laid out as k (user-major, 2Q entries), T1, T2 and, for the
intra-layer variant, one slack per user and layer standing for its
positive part.
"""

import logging

import numpy as np
from scipy.optimize import linprog

from channel.stats import ChannelStats
from geometry.types import Weights
from schemes.ach2 import VARIANTS, overheard_fraction

logger = logging.getLogger(__name__)

# Allocations below this total are treated as an empty LP solution.
EMPTY_TOTAL = 1e-12


def solve_variant_lp(stats: ChannelStats, variant: str, w: Weights) -> np.ndarray | None:
    """Maximize w.k for one variant; returns k (2, Q) normalized to unit total, or None."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant '{variant}', expected one of {sorted(VARIANTS)}")
    p, m, expected = stats.layer_arrays()
    w = np.asarray(w, dtype=float)
    Q = stats.Q
    eta = overheard_fraction(p, m)
    inv_m = np.divide(1.0, m, out=np.zeros_like(m), where=m > 0)

    n_k = 2 * Q
    t1, t2 = n_k, n_k + 1
    n_slack = n_k if variant == "intra" else 0
    n_var = n_k + 2 + n_slack

    def k_at(u: int, q: int) -> int:
        return u * Q + q

    rows: list[np.ndarray] = []

    def constraint() -> np.ndarray:
        row = np.zeros(n_var)
        rows.append(row)
        return row

    for q in range(Q):
        row = constraint()
        row[k_at(0, q)] = row[k_at(1, q)] = 1.0
        row[t1] = -m[q]
    row = constraint()
    row[t1] = row[t2] = 1.0

    for u in range(2):
        if variant == "idle":
            row = constraint()
            for q in range(Q):
                row[k_at(u, q)] = eta[u, q]
            row[t2] = -expected[u]
        elif variant == "inter":
            row = constraint()
            for q in range(Q):
                row[k_at(u, q)] += eta[u, q]
                row[k_at(0, q)] += p[u, q] * inv_m[q]
                row[k_at(1, q)] += p[u, q] * inv_m[q]
            row[t1] = -p[u].sum()
            row[t2] = -expected[u]
        else:
            total = constraint()
            for q in range(Q):
                slack = n_k + 2 + k_at(u, q)
                row = constraint()
                row[k_at(u, q)] += eta[u, q]
                row[k_at(0, q)] += p[u, q] * inv_m[q]
                row[k_at(1, q)] += p[u, q] * inv_m[q]
                row[t1] = -p[u, q]
                row[slack] = -1.0
                total[slack] = 1.0
            total[t2] = -expected[u]

    A_ub = np.vstack(rows)
    b_ub = np.zeros(len(rows))
    b_ub[Q] = 1.0

    bounds = []
    for u in range(2):
        for q in range(Q):
            open_ = w[u] > 0 and m[q] > 0
            bounds.append((0.0, None) if open_ else (0.0, 0.0))
    bounds += [(0.0, None)] * (2 + n_slack)

    c = np.zeros(n_var)
    c[:n_k] = -np.repeat(w, Q)

    result = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if result.status != 0:
        logger.warning(f"{variant} LP at w={tuple(w.tolist())} failed: {result.message}")
        return None

    k = np.clip(result.x[:n_k], 0.0, None).reshape(2, Q)
    total = float(k.sum())
    if total <= EMPTY_TOTAL:
        return None
    logger.debug(f"{variant} LP at w={tuple(w.tolist())}: objective {-result.fun:.9f}")
    return k / total
