#!/usr/bin/env python
"""
Simulation configuration.
"""

import logging
from dataclasses import dataclass

import numpy as np

from channel.channel_model import ChannelModel
from channel.stats import compute_stats
from schemes.ach2 import VARIANTS
from schemes.exceptions import AllocationError
from schemes.types import Allocation

from .exceptions import SimConfigError
from .pools import DEFAULT_WINDOW

logger = logging.getLogger(__name__)

SCHEDULING = ("sequential", "randomized")
PAYLOAD_SIZE = 8


@dataclass
class SimConfig:
    """One protocol run over `trials` independent trials."""

    channel: ChannelModel
    variant: str
    alloc: np.ndarray
    """(2, Q) integer packet counts."""
    seed: int = 0
    trials: int = 1
    scheduling: str | None = None
    """Phase1 order of users on a layer; None picks the variant's default."""
    payload_size: int = PAYLOAD_SIZE
    """Bytes per packet."""
    window: int = DEFAULT_WINDOW
    """Most undecoded pool packets per user that one coded symbol combines."""

    def __post_init__(self):
        if self.channel.K != 2:
            raise SimConfigError(f"the protocol is defined for two users, channel has K={self.channel.K}")
        if self.variant not in VARIANTS:
            raise SimConfigError(f"unknown variant '{self.variant}', expected one of {sorted(VARIANTS)}")
        if self.trials < 1:
            raise SimConfigError(f"trials must be >= 1, got {self.trials}")
        if self.scheduling is not None and self.scheduling not in SCHEDULING:
            raise SimConfigError(f"unknown scheduling '{self.scheduling}', expected one of {list(SCHEDULING)}")
        if self.payload_size < 1:
            raise SimConfigError(f"payload_size must be >= 1, got {self.payload_size}")
        if self.window < 1:
            raise SimConfigError(f"window must be >= 1, got {self.window}")
        self.alloc = _packet_counts(self.alloc, self.channel)

    @property
    def Q(self) -> int:
        return self.channel.Q


def _packet_counts(alloc, channel: ChannelModel) -> np.ndarray:
    counts = np.asarray(alloc)
    if counts.ndim != 2 or counts.shape[0] != 2:
        raise AllocationError(f"allocation must be a 2 x Q array, got shape {counts.shape}")
    if counts.shape[1] > channel.Q:
        raise AllocationError(f"layer index {counts.shape[1]} beyond Q={channel.Q}")
    if counts.shape[1] < channel.Q:
        raise AllocationError(f"allocation covers {counts.shape[1]} layers, channel has Q={channel.Q}")
    if not np.all(np.isfinite(counts)) or np.any(counts != np.round(counts)):
        raise AllocationError("simulation allocations are whole packet counts")
    counts = counts.astype(np.int64)
    if np.any(counts < 0):
        raise AllocationError("packet counts must be nonnegative")
    if not counts.any():
        raise AllocationError("allocation is identically zero")

    stats = compute_stats(channel)
    p, m, expected = stats.layer_arrays()
    load = counts.sum(axis=0)
    dead = np.flatnonzero((load > 0) & (m <= 0))
    if dead.size:
        raise AllocationError(f"packets on layer {dead[0] + 1}, which neither user ever receives")
    # A user who never receives anything cannot finish Phase2.
    for u in range(2):
        if counts[u].any() and expected[u] <= 0:
            raise SimConfigError(f"user {u + 1} has packets but never receives a layer")
    return counts


def integer_allocation(alloc: Allocation, packets: int) -> np.ndarray:
    """Scale a fluid allocation to about `packets` packets in total, rounding per entry."""
    if packets < 1:
        raise SimConfigError(f"packets must be >= 1, got {packets}")
    counts = np.rint(alloc.k * packets / alloc.k.sum()).astype(np.int64)
    if not counts.any():
        raise SimConfigError(f"{packets} packets round {alloc} to an empty allocation")
    return counts
