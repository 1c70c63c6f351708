#!/usr/bin/env python
"""
Weighted-sum-rate support functions of the three reference regions.

All functions take 0-based users and accept any nonnegative weight vector
whose length matches the channel's K.
"""

from collections.abc import Sequence

import numpy as np

from channel.stats import ChannelStats
from geometry.types import Weights

from .permutations import PermutationSet


def _weights(stats: ChannelStats, w: Weights | Sequence[float]) -> np.ndarray:
    vector = np.asarray(w, dtype=float).ravel()
    if vector.size != stats.K:
        raise ValueError(f"weights of length {vector.size} for a K={stats.K} channel")
    if np.any(vector < 0):
        raise ValueError(f"weights must be nonnegative, got {vector.tolist()}")
    return vector


def support_no_csit(stats: ChannelStats, w: Weights | Sequence[float]) -> float:
    """sum_q max_u w_u Pr[N_u >= q]."""
    weights = _weights(stats, w)
    layers = weights[:, np.newaxis] * stats.marginal_geq[:, 1:]
    return float(layers.max(axis=0).sum())


def support_full_lookahead(stats: ChannelStats, w: Weights | Sequence[float]) -> float:
    """Greedy vertex of the polymatroid { sum_{u in S} R_u <= E[max_{u in S} N_u] }."""
    weights = _weights(stats, w)
    order = np.argsort(-weights, kind="stable")
    total = 0.0
    for i, user in enumerate(order):
        following = weights[order[i + 1]] if i + 1 < len(order) else 0.0
        total += (weights[user] - following) * stats.expected_max(order[: i + 1].tolist())
    return float(total)


def support_cof_permutation(
    stats: ChannelStats, w: Weights | Sequence[float], perm: Sequence[int]
) -> float:
    """Outer bound for one ordering: sum_q max_k w_perm[k] Pr[max(N_perm[k:]) >= q]."""
    weights = _weights(stats, w)
    if sorted(perm) != list(range(stats.K)):
        raise ValueError(f"{tuple(perm)} is not an ordering of {stats.K} users")
    terms = np.stack(
        [weights[user] * stats.subset_max_geq[frozenset(perm[k:])][1:] for k, user in enumerate(perm)]
    )
    return float(terms.max(axis=0).sum())


def support_cof_outer(stats: ChannelStats, w: Weights | Sequence[float]) -> float:
    """Tightest feedback outer bound at w: the minimum over all user orderings."""
    return min(support_cof_permutation(stats, w, perm) for perm in PermutationSet(stats.K))
