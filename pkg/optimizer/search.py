#!/usr/bin/env python
"""
Weighted-rate maximization over packet allocations.

The rates of a coding variant are invariant to scaling the allocation, so
the search runs on the simplex sum(k) = 1 restricted to the searchable
coordinates: users with positive weight on layers someone receives. A
coarse composition grid seeds a pattern search from its best cells, and the
variant's linear program (see `linear_program`) adds one more candidate.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from channel.stats import ChannelStats
from geometry.types import RatePoint, Weights
from schemes.ach2 import VARIANTS, evaluate, evaluate_rates_batch
from schemes.types import Allocation

from .config import SearchConfig
from .linear_program import solve_variant_lp

logger = logging.getLogger(__name__)

# Smallest objective gain that counts as an improving move.
IMPROVEMENT = 1e-15


def composition_count(n: int, resolution: int) -> int:
    """Number of grid points for n coordinates at the given resolution."""
    return math.comb(resolution - 2 + n, n - 1)


def simplex_grid(n: int, resolution: int) -> np.ndarray:
    """All points of the simplex whose coordinates are multiples of 1 / (resolution - 1).

    Rows come in lexicographic order of the stars-and-bars placement, so the
    grid is deterministic.
    """
    if n < 1:
        raise ValueError(f"need at least one coordinate, got {n}")
    parts = resolution - 1
    if n == 1:
        return np.ones((1, 1))
    slots = parts + n - 1
    rows = []
    for bars in combinations(range(slots), n - 1):
        edges = (-1, *bars, slots)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(n)])
    return np.asarray(rows, dtype=float) / parts


@dataclass(frozen=True)
class SearchSpace:
    """Flat indices into k (2, Q) that the search may move mass between."""

    Q: int
    index: np.ndarray

    @classmethod
    def for_weights(cls, stats: ChannelStats, w: Weights) -> "SearchSpace":
        _, m, _ = stats.layer_arrays()
        mask = (np.asarray(w, dtype=float) > 0)[:, np.newaxis] & (m > 0)[np.newaxis, :]
        return cls(Q=stats.Q, index=np.flatnonzero(mask.ravel()))

    @property
    def size(self) -> int:
        return int(self.index.size)

    @property
    def is_empty(self) -> bool:
        """No user with positive weight ever receives a layer."""
        return self.index.size == 0

    def embed(self, x: np.ndarray) -> np.ndarray:
        """(n, size) simplex coordinates -> (n, 2, Q) allocations."""
        x = np.atleast_2d(x)
        k = np.zeros((x.shape[0], 2 * self.Q))
        k[:, self.index] = x
        return k.reshape(-1, 2, self.Q)

    def project(self, k: np.ndarray) -> np.ndarray:
        return np.asarray(k, dtype=float).ravel()[self.index]


@dataclass(frozen=True)
class Candidate:
    x: np.ndarray
    value: float
    source: str

    @property
    def key(self) -> tuple:
        return (-self.value, tuple(self.x.tolist()))


class WeightedRateObjective:
    """w . rates for a batch of simplex points."""

    def __init__(self, stats: ChannelStats, variant: str, w: Weights, space: SearchSpace):
        self.stats = stats
        self.variant = variant
        self.w = np.asarray(w, dtype=float)
        self.space = space
        self.evaluations = 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        self.evaluations += x.shape[0]
        rates = evaluate_rates_batch(self.stats, self.space.embed(x), self.variant)
        return rates @ self.w


def _grid_resolution(n: int, cfg: SearchConfig) -> int:
    resolution = cfg.grid_resolution
    while resolution > 2 and composition_count(n, resolution) > cfg.max_grid_points:
        resolution -= 1
    if resolution != cfg.grid_resolution:
        logger.warning(
            f"Grid of {composition_count(n, cfg.grid_resolution)} points over {n} coordinates exceeds "
            f"max_grid_points={cfg.max_grid_points}; using resolution {resolution}"
        )
    return resolution


def pattern_search(
    objective: WeightedRateObjective,
    start: Candidate,
    step: float,
    cfg: SearchConfig,
    polling: np.ndarray,
) -> Candidate:
    """Best-improvement search over pairwise transfers e_i - e_j.

    `polling` orders the moves; the first of several equal best moves wins.
    The step halves whenever no move improves.
    """
    n = start.x.size
    if n == 1:
        return start
    pairs = np.array([(i, j) for i in range(n) for j in range(n) if i != j])[polling]
    gain, loss = pairs[:, 0], pairs[:, 1]
    rows = np.arange(len(pairs))

    x, value = start.x.copy(), start.value
    iterations = 0
    while step >= cfg.tolerance and iterations < cfg.max_iterations:
        iterations += 1
        amount = np.minimum(step, x[loss])
        moves = np.repeat(x[np.newaxis, :], len(pairs), axis=0)
        moves[rows, gain] += amount
        moves[rows, loss] -= amount
        values = objective(moves)
        values[amount <= 0.0] = -np.inf
        best = int(np.argmax(values))
        if values[best] > value + IMPROVEMENT:
            x, value = moves[best], float(values[best])
        else:
            step *= 0.5
    logger.debug(f"Pattern search from {start.source}: {iterations} iterations, objective {value:.9f}")
    return Candidate(x=x, value=value, source="pattern")


def search_candidates(stats: ChannelStats, variant: str, w: Weights, cfg: SearchConfig) -> list[Candidate]:
    """Every candidate the search produced, best first."""
    space = SearchSpace.for_weights(stats, w)
    if space.is_empty:
        return []
    objective = WeightedRateObjective(stats, variant, w, space)
    n = space.size

    resolution = _grid_resolution(n, cfg)
    grid = simplex_grid(n, resolution)
    values = objective(grid)
    order = np.lexsort(tuple(grid[:, i] for i in reversed(range(n))) + (-values,))
    starts = [Candidate(x=grid[i], value=float(values[i]), source="grid") for i in order[: cfg.multistarts]]

    rng = np.random.default_rng(cfg.seed)
    polling = rng.permutation(n * (n - 1))
    step = 1.0 / (resolution - 1)
    candidates = starts + [pattern_search(objective, start, step, cfg, polling) for start in starts]

    if cfg.lp_polish:
        k = solve_variant_lp(stats, variant, w)
        if k is not None:
            x = space.project(k)
            candidates.append(Candidate(x=x, value=float(objective(x)[0]), source="lp"))

    candidates.sort(key=lambda c: c.key)
    logger.debug(
        f"{variant} at w={w.w}: best {candidates[0].value:.9f} from {candidates[0].source} "
        f"after {objective.evaluations} evaluations"
    )
    return candidates


def maximize_weighted_rate(
    stats: ChannelStats, variant: str, w: Weights, cfg: SearchConfig | None = None
) -> tuple[Allocation | None, RatePoint]:
    """Allocation on the unit simplex maximizing w . rates for one coding variant.

    Returns (None, origin) when no user with positive weight can receive anything.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant '{variant}', expected one of {sorted(VARIANTS)}")
    if stats.K != 2:
        raise ValueError(f"the coding schemes cover two users, channel has K={stats.K}")
    w = w if isinstance(w, Weights) else Weights(w)
    cfg = cfg or SearchConfig()

    candidates = search_candidates(stats, variant, w, cfg)
    if not candidates:
        logger.debug(f"{variant} at w={w.w}: nothing is ever delivered to a weighted user")
        return None, RatePoint((0.0, 0.0))
    best = candidates[0]
    space = SearchSpace.for_weights(stats, w)
    alloc = Allocation(space.embed(best.x)[0])
    return alloc, evaluate(stats, alloc, variant).rates
