"""
Slot-level simulation of the two-phase feedback protocol with random linear
network coding over GF(2^8).
"""

from .config import PAYLOAD_SIZE, SCHEDULING, SimConfig, integer_allocation
from .exceptions import SimConfigError, StateTraceExhausted
from .policy import POLICIES, FinishedLayerPolicy, IdlePolicy, InterLayerPolicy, IntraLayerPolicy, make_policy
from .pools import DEFAULT_WINDOW, RetransmissionPools
from .receiver import Receiver
from .report import (
    CSV_COLUMNS,
    SimReport,
    TrialResult,
    format_summary,
    format_trials_csv,
    write_summary,
    write_trials_csv,
)
from .transmitter import CodedSymbol, FeedbackEvent, Transmission, Transmitter
from .trial import analytic_rates, run_batch, run_trial, trial_rngs

__all__ = [
    "DEFAULT_WINDOW",
    "PAYLOAD_SIZE",
    "SCHEDULING",
    "CSV_COLUMNS",
    "SimConfig",
    "SimConfigError",
    "StateTraceExhausted",
    "integer_allocation",
    "FinishedLayerPolicy",
    "IdlePolicy",
    "IntraLayerPolicy",
    "InterLayerPolicy",
    "POLICIES",
    "make_policy",
    "RetransmissionPools",
    "CodedSymbol",
    "Transmission",
    "FeedbackEvent",
    "Transmitter",
    "Receiver",
    "TrialResult",
    "SimReport",
    "trial_rngs",
    "run_trial",
    "run_batch",
    "analytic_rates",
    "format_trials_csv",
    "write_trials_csv",
    "format_summary",
    "write_summary",
]
