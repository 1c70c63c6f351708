#!/usr/bin/env python
"""
State distribution of the layered packet erasure broadcast channel.

Each slot the transmitter stacks Q packets; user u receives the bottom N_u of
them. The joint law of (N_1, ..., N_K) over {0..Q}^K is stored as a dense
K-dimensional array indexed by the state vector.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from .exceptions import ChannelDocumentError, ChannelValidationError

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-9
MAX_USERS = 8
MAX_INDEX_BITS = 24


@dataclass(frozen=True)
class ChannelModel:
    K: int
    """Number of users."""
    Q: int
    """Number of layers per slot."""
    pmf: np.ndarray
    """Joint PMF, shape (Q+1,)*K; pmf[n_1, ..., n_K] = Pr[N = n]."""

    def __post_init__(self):
        if int(self.K) < 1 or int(self.Q) < 1:
            raise ChannelValidationError(f"K and Q must be >= 1, got K={self.K}, Q={self.Q}")
        if self.K > MAX_USERS:
            raise ChannelValidationError(f"K={self.K} exceeds the supported maximum of {MAX_USERS} users")
        if self.K * math.log2(self.Q + 1) > MAX_INDEX_BITS:
            raise ChannelValidationError(
                f"state space (Q+1)^K = {self.Q + 1}^{self.K} exceeds {MAX_INDEX_BITS} bits of index space"
            )

        pmf = np.array(self.pmf, dtype=float)
        expected = (self.Q + 1,) * self.K
        if pmf.shape != expected:
            raise ChannelValidationError(f"pmf shape {pmf.shape} does not match (Q+1)^K = {expected}")
        if not np.all(np.isfinite(pmf)):
            raise ChannelValidationError("pmf contains non-finite entries")
        if np.any(pmf < 0):
            index = tuple(int(i) for i in np.argwhere(pmf < 0)[0])
            raise ChannelValidationError(f"negative mass {pmf[index]} at state {index}")

        total = float(pmf.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ChannelValidationError(f"total mass {total:.10g} deviates from 1 by more than {MASS_TOLERANCE}")
        pmf = pmf / total

        pmf.flags.writeable = False
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "Q", int(self.Q))
        object.__setattr__(self, "pmf", pmf)

    @cached_property
    def cdf(self) -> np.ndarray:
        """Cumulative mass over the C-order flattened state space."""
        cdf = np.cumsum(self.pmf.ravel())
        cdf[-1] = 1.0
        cdf.flags.writeable = False
        return cdf

    @property
    def shape(self) -> tuple[int, ...]:
        return self.pmf.shape

    def probability(self, state) -> float:
        return float(self.pmf[tuple(state)])

    @classmethod
    def deterministic(cls, state, Q: int) -> "ChannelModel":
        """Point mass on one state vector."""
        state = tuple(int(n) for n in state)
        pmf = np.zeros((Q + 1,) * len(state))
        pmf[state] = 1.0
        return cls(K=len(state), Q=Q, pmf=pmf)

    @classmethod
    def independent(cls, marginals) -> "ChannelModel":
        """Product channel from per-user marginals, each of length Q+1."""
        marginals = [np.asarray(m, dtype=float) for m in marginals]
        sizes = {m.size for m in marginals}
        if len(sizes) != 1:
            raise ChannelValidationError(f"marginals have different lengths {sorted(sizes)}")
        pmf = marginals[0]
        for marginal in marginals[1:]:
            pmf = np.multiply.outer(pmf, marginal)
        return cls(K=len(marginals), Q=sizes.pop() - 1, pmf=pmf)

    def to_document(self) -> dict:
        return {"K": self.K, "Q": self.Q, "pmf": self.pmf.tolist()}

    def __str__(self) -> str:
        return f"ChannelModel(K={self.K}, Q={self.Q})"


def load_channel(source: str | Path) -> ChannelModel:
    """Read a channel description document (YAML with keys K, Q, pmf)."""
    path = Path(source)
    if not path.is_file():
        raise ChannelDocumentError(f"channel file not found: {path}")
    try:
        document = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
    except (OmegaConfBaseException, OSError, ValueError) as e:
        raise ChannelDocumentError(f"cannot parse channel file {path}: {e}") from e

    if not isinstance(document, dict):
        raise ChannelDocumentError(f"{path}: expected a mapping with keys K, Q, pmf")
    missing = [key for key in ("K", "Q", "pmf") if key not in document]
    if missing:
        raise ChannelDocumentError(f"{path}: missing field(s) {', '.join(missing)}")

    try:
        K, Q = int(document["K"]), int(document["Q"])
        pmf = np.array(document["pmf"], dtype=float)
    except (TypeError, ValueError) as e:
        raise ChannelDocumentError(f"{path}: non-numeric K, Q or pmf entries ({e})") from e
    if K == 1 and pmf.shape == (1, Q + 1):
        # single-user PMF written as one row
        pmf = pmf[0]
    if pmf.shape != (Q + 1,) * K:
        raise ChannelDocumentError(
            f"{path}: pmf shape {pmf.shape} does not match K={K}, Q={Q}; expected {(Q + 1,) * K}"
        )

    try:
        channel = ChannelModel(K=K, Q=Q, pmf=pmf)
    except ChannelValidationError as e:
        raise ChannelValidationError(f"{path}: {e.message}") from e
    logger.info(f"Loaded {channel} from {path}")
    return channel
