#!/usr/bin/env python
"""
Packet allocations and the timing quantities derived from them.

Counts are fluid (real-valued) packets; user u and layer q are 0-based, so
`k[0, 0]` is the number of packets for user 1 on the bottom layer.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from geometry.types import RatePoint

from .exceptions import AllocationError

logger = logging.getLogger(__name__)

USERS = 2


def _frozen(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class Allocation:
    k: np.ndarray
    """(2, Q) packets per user and layer."""

    def __post_init__(self):
        try:
            k = np.array(self.k, dtype=float)
        except (TypeError, ValueError) as e:
            raise AllocationError(f"allocation entries must be numbers: {e}") from e
        if k.ndim != 2 or k.shape[0] != USERS or k.shape[1] < 1:
            raise AllocationError(f"allocation must be a 2 x Q array, got shape {k.shape}")
        if not np.all(np.isfinite(k)):
            raise AllocationError("allocation contains non-finite entries")
        if np.any(k < 0):
            u, q = (int(i) for i in np.argwhere(k < 0)[0])
            raise AllocationError(f"negative allocation {k[u, q]} for user {u + 1} on layer {q + 1}")
        if not np.any(k > 0):
            raise AllocationError("allocation is identically zero")
        object.__setattr__(self, "k", _frozen(k))

    @property
    def Q(self) -> int:
        return int(self.k.shape[1])

    @property
    def totals(self) -> np.ndarray:
        """Packets per user, summed over layers."""
        return self.k.sum(axis=1)

    def scaled(self, alpha: float) -> "Allocation":
        return Allocation(alpha * self.k)

    @classmethod
    def single(cls, Q: int, user: int, layer: int, packets: float = 1.0) -> "Allocation":
        k = np.zeros((USERS, Q))
        k[user, layer] = packets
        return cls(k)

    def to_document(self) -> dict:
        return {"k": self.k.tolist()}

    def __str__(self) -> str:
        rows = "; ".join(" ".join(f"{v:.4f}" for v in row) for row in self.k)
        return f"Allocation[{rows}]"


def load_allocation(source: str | Path, Q: int | None = None) -> Allocation:
    """Read an allocation document: a mapping with field `k` holding a 2 x Q array."""
    path = Path(source)
    if not path.is_file():
        raise AllocationError(f"allocation file not found: {path}")
    try:
        document = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
    except (OmegaConfBaseException, OSError, ValueError) as e:
        raise AllocationError(f"cannot parse allocation file {path}: {e}") from e
    if not isinstance(document, dict) or "k" not in document:
        raise AllocationError(f"{path}: missing field k")

    rows = document["k"]
    if Q is not None and isinstance(rows, list):
        for row in rows:
            if isinstance(row, list) and len(row) > Q:
                raise AllocationError(f"{path}: layer index {len(row)} beyond Q={Q}")
    try:
        alloc = Allocation(rows)
    except AllocationError as e:
        raise AllocationError(f"{path}: {e.message}") from e
    if Q is not None and alloc.Q != Q:
        raise AllocationError(f"{path}: allocation covers {alloc.Q} layers, channel has Q={Q}")
    logger.info(f"Loaded {alloc} from {path}")
    return alloc


@dataclass(frozen=True)
class PhaseEvaluation:
    """Phase1 timing plus, once a variant has finalized it, the Phase2 backlog and rates."""

    alloc: Allocation
    t_unc_q: np.ndarray
    """(Q,) slot at which layer q delivers its last uncoded packet."""
    t_unc: float
    k_rem_uq: np.ndarray
    """(2, Q) packets overheard by the other user and still owed to u."""
    eta_uq: np.ndarray
    """(2, Q) overheard fraction, k_rem_uq / k_uq."""
    variant: str | None = None
    k_rem_u: np.ndarray | None = None
    """(2,) Phase2 backlog per user."""
    t_nc_u: np.ndarray | None = None
    t_nc: float | None = None
    t: float | None = None
    rates: RatePoint | None = None
    feasible: bool = True

    @property
    def finalized(self) -> bool:
        return self.rates is not None

    def to_report(self) -> dict:
        """Plain key-value view (1-based names) for YAML output."""
        report = {
            "variant": self.variant,
            "k": self.alloc.k.tolist(),
            "t_unc_q": self.t_unc_q.tolist(),
            "t_unc": float(self.t_unc),
            "eta_uq": self.eta_uq.tolist(),
            "k_rem_uq": self.k_rem_uq.tolist(),
        }
        if self.finalized:
            report.update(
                {
                    "k_rem_u": self.k_rem_u.tolist(),
                    "t_nc_u": self.t_nc_u.tolist(),
                    "t_nc": float(self.t_nc),
                    "t": float(self.t),
                    "r1": self.rates[0],
                    "r2": self.rates[1],
                    "feasible": self.feasible,
                }
            )
        return report


@dataclass(frozen=True)
class SubPhaseTrace:
    """Sub-phase bookkeeping of the inter-layer coding scheme.

    Index j = 0 holds the initial state; entry j describes the end of the
    j-th sub-phase, so `k_unc` and `k_rtx` have Q+1 entries along axis 0.
    """

    order: tuple[int, ...]
    delta: np.ndarray
    k_unc: np.ndarray
    """(Q+1, 2, Q)"""
    k_rtx: np.ndarray
    """(Q+1, 2)"""
    serve_prob: np.ndarray
    """(2, Q) Pr[A_q = u]; zero on layers without packets."""
    clamped: np.ndarray = field(default=None)
    """(Q, 2) True where the coded backlog was clipped at zero."""

    @property
    def backlog(self) -> np.ndarray:
        return self.k_rtx[-1]

    @property
    def intermediate_clamp(self) -> bool:
        return bool(np.any(self.clamped[:-1]))
