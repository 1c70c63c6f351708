#!/usr/bin/env python
"""
Transmitter side of the two-phase protocol.

Every slot is planned before its channel state is drawn: `plan_slot` only
sees feedback from earlier slots, and `apply_feedback` then moves packets
out of the uncoded queues according to who received them.
"""

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from gf.field import as_field, combine, random_coefficients

from .policy import FinishedLayerPolicy, Selection, everything
from .pools import DEFAULT_WINDOW, RetransmissionPools

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodedSymbol:
    layer: int
    coeffs: tuple[np.ndarray, np.ndarray]
    """Coefficients of user 1's and user 2's packets, aligned with `positions`."""
    payload: np.ndarray
    positions: tuple[np.ndarray, np.ndarray] | None = None
    """Pool positions the coefficients apply to; None means 0..len(coeffs)-1."""

    def positions_of(self, user: int) -> np.ndarray:
        if self.positions is None:
            return np.arange(self.coeffs[user].size)
        return self.positions[user]


@dataclass(frozen=True)
class Transmission:
    layer: int
    kind: str
    """"uncoded", "coded" or "silent"."""
    user: int | None = None
    packet: int | None = None
    symbol: CodedSymbol | None = None

    @property
    def decision(self) -> tuple:
        """Hashable summary of what was sent, for replay comparisons."""
        if self.kind == "coded":
            c0, c1 = self.symbol.coeffs
            p0, p1 = self.symbol.positions_of(0), self.symbol.positions_of(1)
            return (self.layer, self.kind, c0.tobytes(), c1.tobytes(), p0.tobytes(), p1.tobytes())
        return (self.layer, self.kind, self.user, self.packet)


@dataclass(frozen=True)
class FeedbackEvent:
    kind: str
    """"direct" when the intended user got the packet, "overheard" when only its peer did."""
    user: int
    """Intended user."""
    packet: int
    layer: int
    pool_position: int | None = None


class Transmitter:
    def __init__(
        self,
        alloc: np.ndarray,
        policy: FinishedLayerPolicy,
        scheduling: str,
        payload_size: int,
        rng: np.random.Generator,
        window: int = DEFAULT_WINDOW,
    ):
        self.alloc = np.asarray(alloc, dtype=np.int64)
        self.Q = self.alloc.shape[1]
        self.policy = policy
        self.randomized = scheduling == "randomized"
        self.rng = rng
        self.payloads = [
            rng.integers(0, 256, size=(int(self.alloc[u].sum()), payload_size), dtype=np.uint8) for u in range(2)
        ]
        self.pools = RetransmissionPools(window)

        # queues[q][u] holds user u's not-yet-received packet ids on layer q
        self.queues: list[tuple[deque, deque]] = []
        offsets = np.zeros(2, dtype=np.int64)
        for q in range(self.Q):
            per_user = []
            for u in range(2):
                count = int(self.alloc[u, q])
                per_user.append(deque(range(offsets[u], offsets[u] + count)))
                offsets[u] += count
            self.queues.append(tuple(per_user))

    def remaining(self, layer: int) -> int:
        first, second = self.queues[layer]
        return len(first) + len(second)

    @property
    def uncoded_done(self) -> bool:
        return all(self.remaining(q) == 0 for q in range(self.Q))

    def _head(self, layer: int) -> int:
        """User whose packet goes out on `layer` this slot."""
        first, second = self.queues[layer]
        if not first:
            return 1
        if not second:
            return 0
        if self.randomized:
            return 0 if self.rng.random() * (len(first) + len(second)) < len(first) else 1
        return 0

    def _encode(self, layer: int, selection: Selection) -> CodedSymbol:
        coeffs = []
        payload = as_field(np.zeros(self.payloads[0].shape[1], dtype=np.uint8))
        for u in range(2):
            c = random_coefficients(self.rng, selection[u].size)
            coeffs.append(c)
            payload = payload + as_field(combine(c, self.payloads[u][self.pools.packets(u, selection[u])]))
        return CodedSymbol(
            layer=layer,
            coeffs=(coeffs[0], coeffs[1]),
            payload=payload.view(np.ndarray),
            positions=(selection[0], selection[1]),
        )

    def plan_slot(self) -> list[Transmission]:
        phase2 = self.uncoded_done
        plan = []
        for q in range(self.Q):
            if self.remaining(q):
                user = self._head(q)
                plan.append(Transmission(layer=q, kind="uncoded", user=user, packet=self.queues[q][user][0]))
                continue
            selection = everything(self.pools) if phase2 else self.policy.select(self.pools, q)
            if selection is None:
                plan.append(Transmission(layer=q, kind="silent"))
            else:
                plan.append(Transmission(layer=q, kind="coded", symbol=self._encode(q, selection)))
        return plan

    def acknowledge(self, user: int, positions: list[int]) -> None:
        """Pool positions `user` has just decoded, as implied by reception feedback."""
        for position in positions:
            self.pools.resolve(user, position)

    def apply_feedback(self, plan: list[Transmission], state: tuple[int, ...]) -> list[FeedbackEvent]:
        """Dequeue every uncoded packet somebody received; returns what happened to each."""
        events = []
        for t in plan:
            if t.kind != "uncoded":
                continue
            got = [state[v] > t.layer for v in range(2)]
            if not any(got):
                continue
            self.queues[t.layer][t.user].popleft()
            if got[t.user]:
                events.append(FeedbackEvent("direct", t.user, t.packet, t.layer))
            else:
                position = self.pools.add(t.user, t.packet, t.layer)
                events.append(FeedbackEvent("overheard", t.user, t.packet, t.layer, position))
        return events
