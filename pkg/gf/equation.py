"""Coded equation: coefficient vector over a packet pool plus combined payload."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CodedEquation:
    coeffs: np.ndarray
    """One GF(2^8) coefficient per unknown packet, as uint8."""
    payload: np.ndarray
    """Combined payload symbols, as uint8."""

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.uint8).reshape(-1)
        payload = np.array(self.payload, dtype=np.uint8).reshape(-1)
        coeffs.flags.writeable = False
        payload.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "payload", payload)

    @property
    def width(self) -> int:
        return int(self.coeffs.size)

    def __str__(self) -> str:
        return f"CodedEquation(width={self.width}, payload={self.payload.size}B)"
