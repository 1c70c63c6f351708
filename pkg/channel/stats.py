#!/usr/bin/env python
"""
Layer statistics derived from a channel PMF.

Users are 0-based. Every per-layer array has Q+1 entries indexed by q, so
entry 0 is the trivial Pr[. >= 0] = 1 and the physical layers are 1..Q.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .channel_model import ChannelModel


def _freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def nonempty_subsets(K: int) -> list[frozenset[int]]:
    return [frozenset(s) for size in range(1, K + 1) for s in combinations(range(K), size)]


@dataclass(frozen=True)
class ChannelStats:
    K: int
    Q: int
    marginal_geq: np.ndarray
    """(K, Q+1): Pr[N_u >= q]."""
    subset_max_geq: dict[frozenset[int], np.ndarray]
    """Per nonempty subset S, (Q+1,): Pr[max_{u in S} N_u >= q]."""
    expected_layers: np.ndarray
    """(K,): E[N_u]."""
    expected_subset_max: dict[frozenset[int], float]
    """Per nonempty subset S: E[max_{u in S} N_u]."""

    def geq(self, user: int, q: int) -> float:
        return float(self.marginal_geq[user, q])

    def max_geq(self, users: Iterable[int], q: int) -> float:
        return float(self.subset_max_geq[frozenset(users)][q])

    def expected_max(self, users: Iterable[int]) -> float:
        return self.expected_subset_max[frozenset(users)]

    @property
    def all_users(self) -> frozenset[int]:
        return frozenset(range(self.K))

    def layer_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Two-user layer view: p[u][q-1] = Pr[N_u >= q], m[q-1] = Pr[max >= q], E[N_u]."""
        if self.K != 2:
            raise ValueError(f"two-user statistics requested for K={self.K}")
        p = self.marginal_geq[:, 1:]
        m = self.subset_max_geq[self.all_users][1:]
        return p, m, self.expected_layers


def _tail(distribution: np.ndarray) -> np.ndarray:
    """Pr[X >= q] from Pr[X = q]."""
    tail = np.cumsum(distribution[::-1])[::-1]
    tail[0] = 1.0
    return np.clip(tail, 0.0, 1.0)


def compute_stats(ch: ChannelModel) -> ChannelStats:
    """Marginal and subset-maximum tail probabilities plus their expectations."""
    grid = np.indices(ch.shape).reshape(ch.K, -1)
    mass = ch.pmf.ravel()
    layers = np.arange(1, ch.Q + 1)

    subset_max_geq: dict[frozenset[int], np.ndarray] = {}
    expected_subset_max: dict[frozenset[int], float] = {}
    for subset in nonempty_subsets(ch.K):
        peak = grid[sorted(subset)].max(axis=0)
        tail = _tail(np.bincount(peak, weights=mass, minlength=ch.Q + 1))
        subset_max_geq[subset] = _freeze(tail)
        expected_subset_max[subset] = float(tail[layers].sum())

    marginal_geq = np.stack([subset_max_geq[frozenset({u})] for u in range(ch.K)])
    expected_layers = marginal_geq[:, 1:].sum(axis=1)
    return ChannelStats(
        K=ch.K,
        Q=ch.Q,
        marginal_geq=_freeze(marginal_geq),
        subset_max_geq=subset_max_geq,
        expected_layers=_freeze(expected_layers),
        expected_subset_max=expected_subset_max,
    )
