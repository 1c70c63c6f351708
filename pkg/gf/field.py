#!/usr/bin/env python
"""
GF(2^8) field used for random linear network coding.

Arithmetic is delegated to `galois`, which builds exponential/logarithm lookup
tables for the field at import time. Scalars are plain ints in [0, 255];
vectors and matrices are stored as uint8 arrays and viewed as field arrays
only while computing.
"""

import logging
from typing import TypeAlias

import galois
import numpy as np

from .exceptions import FieldArithmeticError

logger = logging.getLogger(__name__)

FieldElement: TypeAlias = int

FIELD_ORDER = 256
# x^8 + x^4 + x^3 + x + 1
REDUCTION_POLYNOMIAL = 0x11B

GF256 = galois.GF(2**8, irreducible_poly=REDUCTION_POLYNOMIAL)


def _element(a: FieldElement):
    if not 0 <= int(a) < FIELD_ORDER:
        raise ValueError(f"{a!r} is not an element of GF(2^8)")
    return GF256(int(a))


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Field addition (bitwise XOR)."""
    return int(_element(a) + _element(b))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return int(_element(a) - _element(b))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Carry-less product reduced modulo 0x11B."""
    return int(_element(a) * _element(b))


def inv(a: FieldElement) -> FieldElement:
    if int(a) == 0:
        raise FieldArithmeticError()
    return int(_element(a) ** -1)


def div(a: FieldElement, b: FieldElement) -> FieldElement:
    return mul(a, inv(b))


def field_ops(a: FieldElement, b: FieldElement) -> dict[str, FieldElement]:
    """Sum, product and the inverse of `a` in one call (inverse omitted for a = 0)."""
    result = {"add": add(a, b), "mul": mul(a, b)}
    if int(a) != 0:
        result["inv"] = inv(a)
    return result


def as_field(values) -> galois.FieldArray:
    """View uint8 data as a field array without copying."""
    data = np.ascontiguousarray(values, dtype=np.uint8)
    return data.view(GF256)


def random_coefficients(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform coefficients, zero included."""
    return rng.integers(0, FIELD_ORDER, size=size, dtype=np.uint8)


def combine(coeffs: np.ndarray, payloads: np.ndarray) -> np.ndarray:
    """Linear combination sum_i coeffs[i] * payloads[i] of payload rows."""
    coeffs = np.asarray(coeffs, dtype=np.uint8)
    payloads = np.asarray(payloads, dtype=np.uint8)
    if coeffs.size == 0:
        return np.zeros(payloads.shape[-1] if payloads.ndim == 2 else 0, dtype=np.uint8)
    if payloads.shape[0] != coeffs.size:
        raise ValueError(f"{coeffs.size} coefficients for {payloads.shape[0]} payload rows")
    product = as_field(coeffs)[np.newaxis, :] @ as_field(payloads)
    return product[0].view(np.ndarray).astype(np.uint8)
