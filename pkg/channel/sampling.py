"""Inverse-CDF sampling of channel states."""

import numpy as np

from .channel_model import ChannelModel


def sample_states(ch: ChannelModel, rng: np.random.Generator, size: int) -> np.ndarray:
    """`size` i.i.d. state vectors as a (size, K) integer array."""
    u = rng.random(size)
    flat = np.searchsorted(ch.cdf, u, side="right")
    flat = np.minimum(flat, ch.cdf.size - 1)
    return np.stack(np.unravel_index(flat, ch.shape), axis=-1)


def sample_state(ch: ChannelModel, rng: np.random.Generator) -> tuple[int, ...]:
    """One state vector (n_1, ..., n_K); consumes one uniform from `rng`."""
    return tuple(int(n) for n in sample_states(ch, rng, 1)[0])
