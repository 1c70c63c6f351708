#!/usr/bin/env python
"""
Retransmission pools: packets the intended user missed but its peer received.

Pool positions are the unknown indices of the intended user's decoder, so a
pool only ever grows at the end. A position stays open until the intended
user has decoded it; coded symbols only combine open positions, at most
`window` of them per user, oldest first.
"""

import heapq
from itertools import islice

import numpy as np

DEFAULT_WINDOW = 64


class RetransmissionPools:
    def __init__(self, window: int = DEFAULT_WINDOW):
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        self.window_size = window
        self._packets: tuple[list[int], list[int]] = ([], [])
        self._layers: tuple[list[int], list[int]] = ([], [])
        # user -> layer -> open positions in insertion (= ascending) order
        self._open: tuple[dict[int, dict[int, None]], dict[int, dict[int, None]]] = ({}, {})

    def add(self, user: int, packet: int, layer: int) -> int:
        """Append a packet to `user`'s pool; returns its pool position."""
        position = len(self._packets[user])
        self._packets[user].append(packet)
        self._layers[user].append(layer)
        self._open[user].setdefault(layer, {})[position] = None
        return position

    def resolve(self, user: int, position: int) -> None:
        """The intended user decoded this position; later symbols leave it out."""
        self._open[user][self._layers[user][position]].pop(position, None)

    def size(self, user: int) -> int:
        return len(self._packets[user])

    def open_count(self, user: int) -> int:
        return sum(len(positions) for positions in self._open[user].values())

    def packets(self, user: int, positions: np.ndarray | None = None) -> np.ndarray:
        """Packet ids of `user`'s pool, or of the given pool positions."""
        if positions is None:
            return np.asarray(self._packets[user], dtype=np.int64)
        return np.fromiter((self._packets[user][p] for p in positions), dtype=np.int64, count=len(positions))

    def window(self, user: int, layer: int | None = None) -> np.ndarray:
        """Oldest open positions of `user` (on `layer` when given), at most `window_size`."""
        if layer is not None:
            ordered = iter(self._open[user].get(layer, {}))
        else:
            ordered = heapq.merge(*self._open[user].values())
        return np.fromiter(islice(ordered, self.window_size), dtype=np.int64)

    def __str__(self) -> str:
        return (
            f"RetransmissionPools(user1={self.size(0)}, user2={self.size(1)}, "
            f"open=({self.open_count(0)}, {self.open_count(1)}))"
        )
