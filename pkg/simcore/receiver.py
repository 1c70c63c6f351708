#!/usr/bin/env python
"""
Receiver side: one per user.

A user keeps the packets it received directly, remembers the payloads of
its peer's packets that it overheard, and feeds every coded symbol into an
incremental decoder after cancelling the peer's part of the combination.
"""

import logging

import numpy as np

from gf.decoder import IncrementalDecoder
from gf.equation import CodedEquation
from gf.field import as_field, combine

from .transmitter import CodedSymbol

logger = logging.getLogger(__name__)


class Receiver:
    def __init__(self, user: int, own_packets: int, peer_packets: int, payload_size: int):
        self.user = user
        self.peer = 1 - user
        self.own_packets = own_packets
        self.payload_size = payload_size
        self.direct: dict[int, np.ndarray] = {}
        self.pool_packets: list[int] = []
        # Peer packets this user overheard, by the peer's pool position.
        self.overheard = np.zeros((peer_packets, payload_size), dtype=np.uint8)
        self.decoder = IncrementalDecoder(0, payload_size)
        self.innovative = 0
        self.discarded = 0

    def on_direct(self, packet: int, payload: np.ndarray) -> None:
        self.direct[packet] = payload

    def on_overheard(self, pool_position: int, payload: np.ndarray) -> None:
        self.overheard[pool_position] = payload

    def on_pool_growth(self, packet: int) -> None:
        """Own packet that only the peer received; it becomes a decoder unknown."""
        self.pool_packets.append(packet)
        self.decoder.add_unknowns(1)

    @property
    def complete(self) -> bool:
        return self.decoder.is_complete

    def receive(self, symbol: CodedSymbol) -> bool:
        """Apply one coded symbol; returns True when it raised the rank."""
        own, peer = symbol.coeffs[self.user], symbol.coeffs[self.peer]
        known = combine(peer, self.overheard[symbol.positions_of(self.peer)])
        payload = (as_field(symbol.payload) - as_field(known)).view(np.ndarray)
        if self.decoder.add(CodedEquation(own, payload), symbol.positions_of(self.user)):
            self.innovative += 1
            return True
        self.discarded += 1
        return False

    def newly_decoded(self) -> list[int]:
        """Own pool positions decoded since the previous call."""
        return self.decoder.drain_solved()

    def reconstruct(self) -> np.ndarray | None:
        """Payload of every own packet in id order, or None while something is missing."""
        solution = self.decoder.solve()
        if solution is None:
            return None
        result = np.zeros((self.own_packets, self.payload_size), dtype=np.uint8)
        seen = np.zeros(self.own_packets, dtype=bool)
        for packet, payload in self.direct.items():
            result[packet] = payload
            seen[packet] = True
        for position, packet in enumerate(self.pool_packets):
            result[packet] = solution[position]
            seen[packet] = True
        if not seen.all():
            logger.debug(f"user {self.user + 1}: {int((~seen).sum())} packets never arrived")
            return None
        return result

    def __str__(self) -> str:
        return (
            f"Receiver(user={self.user + 1}, direct={len(self.direct)}, pool={len(self.pool_packets)}, "
            f"rank={self.decoder.rank})"
        )
