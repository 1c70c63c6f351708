"""
GF(2^8) arithmetic and linear algebra for random linear network coding.
"""

from .decoder import IncrementalDecoder, rank_and_solve
from .equation import CodedEquation
from .exceptions import FieldArithmeticError, ProtocolIntegrityError
from .field import (
    FIELD_ORDER,
    GF256,
    REDUCTION_POLYNOMIAL,
    FieldElement,
    add,
    as_field,
    combine,
    div,
    field_ops,
    inv,
    mul,
    random_coefficients,
    sub,
)
from .rank import batch_rank, full_rank_probability

__all__ = [
    "FIELD_ORDER",
    "GF256",
    "REDUCTION_POLYNOMIAL",
    "FieldElement",
    "CodedEquation",
    "IncrementalDecoder",
    "rank_and_solve",
    "batch_rank",
    "full_rank_probability",
    "add",
    "sub",
    "mul",
    "inv",
    "div",
    "field_ops",
    "as_field",
    "combine",
    "random_coefficients",
    "FieldArithmeticError",
    "ProtocolIntegrityError",
]
