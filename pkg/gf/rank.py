"""Rank of many small GF(2^8) matrices at once."""

import numpy as np

from .field import as_field


def batch_rank(matrices) -> np.ndarray:
    """Rank of each matrix in a (trials, rows, cols) uint8 stack.

    Elimination runs column by column over the whole stack, so the cost is
    cols vectorized passes instead of one Python loop per matrix.
    """
    stack = np.array(matrices, dtype=np.uint8, copy=True)
    if stack.ndim != 3:
        raise ValueError(f"expected a (trials, rows, cols) stack, got shape {stack.shape}")
    work = as_field(stack)
    trials, rows, cols = work.shape
    rank = np.zeros(trials, dtype=np.int64)
    used = np.zeros((trials, rows), dtype=bool)

    for c in range(cols):
        candidates = (work[:, :, c].view(np.ndarray) != 0) & ~used
        active = np.flatnonzero(candidates.any(axis=1))
        if active.size == 0:
            continue
        pivot = candidates[active].argmax(axis=1)
        used[active, pivot] = True
        rank[active] += 1

        pivot_rows = work[active, pivot, :]
        pivot_rows = pivot_rows / pivot_rows[:, c][:, np.newaxis]
        factors = work[active, :, c].copy()
        factors[np.arange(active.size), pivot] = 0
        work[active] = work[active] - factors[:, :, np.newaxis] * pivot_rows[:, np.newaxis, :]
        work[active, pivot, :] = pivot_rows

    return rank


def full_rank_probability(n: int, field_order: int = 256) -> float:
    """Probability that a uniform n x n matrix over GF(field_order) is invertible."""
    i = np.arange(1, n + 1, dtype=float)
    return float(np.prod(1.0 - np.power(float(field_order), -i)))
