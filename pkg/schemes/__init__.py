"""
Achievable schemes with channel-output feedback for two users.
"""

from .ach1 import ach1_layer_vertices, ach1_support
from .ach2 import (
    VARIANTS,
    evaluate,
    evaluate_phase1,
    evaluate_rates_batch,
    finalize_idle,
    finalize_inter_layer,
    finalize_intra_layer,
    overheard_fraction,
)
from .exceptions import AllocationError
from .recursion import RecursionAgreement, recursion_agreement, subphase_recursion
from .report import format_phase_report, write_phase_report
from .types import Allocation, PhaseEvaluation, SubPhaseTrace, load_allocation

__all__ = [
    "Allocation",
    "PhaseEvaluation",
    "SubPhaseTrace",
    "RecursionAgreement",
    "AllocationError",
    "VARIANTS",
    "load_allocation",
    "ach1_layer_vertices",
    "ach1_support",
    "evaluate_phase1",
    "finalize_idle",
    "finalize_intra_layer",
    "finalize_inter_layer",
    "evaluate",
    "evaluate_rates_batch",
    "overheard_fraction",
    "subphase_recursion",
    "recursion_agreement",
    "format_phase_report",
    "write_phase_report",
]
