#!/usr/bin/env python
"""
What a layer sends once its own uncoded packets are gone but Phase1 is still
running on other layers.
"""

import abc

import numpy as np

from .pools import RetransmissionPools

Selection = tuple[np.ndarray, np.ndarray]
"""Open pool positions of user 1 and user 2 that a coded symbol combines."""


class FinishedLayerPolicy(abc.ABC):
    """Behaviour of a layer between its own finish time and the end of Phase1."""

    name: str
    default_scheduling: str

    @abc.abstractmethod
    def select(self, pools: RetransmissionPools, layer: int) -> Selection | None:
        """Packets to combine on a finished layer, or None to stay silent."""
        pass

    def __str__(self) -> str:
        return f"{self.__class__.__name__}({self.name})"


def everything(pools: RetransmissionPools) -> Selection | None:
    """Windows over both global pools; what every layer sends in Phase2."""
    selection = pools.window(0), pools.window(1)
    if not (selection[0].size or selection[1].size):
        return None
    return selection


class IdlePolicy(FinishedLayerPolicy):
    name = "idle"
    default_scheduling = "sequential"

    def select(self, pools: RetransmissionPools, layer: int) -> Selection | None:
        return None


class IntraLayerPolicy(FinishedLayerPolicy):
    name = "intra"
    default_scheduling = "sequential"

    def select(self, pools: RetransmissionPools, layer: int) -> Selection | None:
        own = pools.window(0, layer), pools.window(1, layer)
        if not (own[0].size or own[1].size):
            return None
        return own


class InterLayerPolicy(FinishedLayerPolicy):
    name = "inter"
    default_scheduling = "randomized"

    def select(self, pools: RetransmissionPools, layer: int) -> Selection | None:
        # Nothing useful to send while every pool packet is decoded.
        return everything(pools)


POLICIES: dict[str, type[FinishedLayerPolicy]] = {
    cls.name: cls for cls in (IdlePolicy, IntraLayerPolicy, InterLayerPolicy)
}


def make_policy(variant: str) -> FinishedLayerPolicy:
    try:
        return POLICIES[variant]()
    except KeyError:
        raise ValueError(f"unknown variant '{variant}', expected one of {sorted(POLICIES)}") from None
