#!/usr/bin/env python
"""
Sub-phase recursion for the inter-layer coding variant.

Phase1 splits at every layer finish time. Within sub-phase j the coded
backlog of user u drains on the layers that already finished and grows by
the packets u's peer overhears on the layers still sending uncoded. The
backlog is clipped at zero after every sub-phase, so when an intermediate
clip fires the result can exceed the one-shot closed form.
"""

import logging
from dataclasses import dataclass

import numpy as np

from channel.stats import ChannelStats

from .ach2 import evaluate_phase1, finalize_inter_layer
from .types import Allocation, SubPhaseTrace

logger = logging.getLogger(__name__)

AGREEMENT_TOLERANCE = 1e-9
# Bracket values above -CLAMP_SLACK are rounding noise, not a clip.
CLAMP_SLACK = 1e-12


def subphase_recursion(stats: ChannelStats, alloc: Allocation) -> SubPhaseTrace:
    pe = evaluate_phase1(stats, alloc)
    p, _, _ = stats.layer_arrays()
    k = alloc.k
    Q = alloc.Q
    finish_q = pe.t_unc_q

    load = k.sum(axis=0)
    serve_prob = np.divide(k, load, out=np.zeros_like(k), where=load > 0)
    order = tuple(sorted(range(Q), key=lambda q: (finish_q[q], q)))
    finish = finish_q[list(order)]
    delta = np.diff(finish, prepend=0.0)

    # Pr[A_q = u, max >= q, N_u < q] = k_uq eta_uq / t_unc_q
    active = finish_q > 0
    overhear_rate = np.divide(pe.k_rem_uq, finish_q, out=np.zeros_like(k), where=active[np.newaxis, :])

    k_unc = np.zeros((Q + 1, 2, Q))
    k_rtx = np.zeros((Q + 1, 2))
    clamped = np.zeros((Q, 2), dtype=bool)
    k_unc[0] = k
    for j in range(1, Q + 1):
        left = np.divide(finish[j - 1], finish_q, out=np.ones(Q), where=active)
        k_unc[j] = k * np.maximum(1.0 - left, 0.0)[np.newaxis, :]

        done = list(order[: j - 1])
        drain = delta[j - 1] * p[:, done].sum(axis=1)
        credit = np.minimum(delta[j - 1] * overhear_rate, k_unc[j - 1]).sum(axis=1)
        bracket = k_rtx[j - 1] - drain + credit
        clamped[j - 1] = bracket < -CLAMP_SLACK
        k_rtx[j] = np.maximum(bracket, 0.0)

    return SubPhaseTrace(
        order=order,
        delta=delta,
        k_unc=k_unc,
        k_rtx=k_rtx,
        serve_prob=serve_prob,
        clamped=clamped,
    )


@dataclass(frozen=True)
class RecursionAgreement:
    closed_form: np.ndarray
    recursion: np.ndarray
    difference: float
    intermediate_clamp: bool

    @property
    def agrees(self) -> bool:
        return self.difference <= AGREEMENT_TOLERANCE


def recursion_agreement(stats: ChannelStats, alloc: Allocation) -> RecursionAgreement:
    """Compare the inter-layer closed-form backlog with the sub-phase recursion."""
    closed = finalize_inter_layer(stats, evaluate_phase1(stats, alloc)).k_rem_u
    trace = subphase_recursion(stats, alloc)
    difference = float(np.max(np.abs(closed - trace.backlog)))
    result = RecursionAgreement(
        closed_form=closed,
        recursion=trace.backlog,
        difference=difference,
        intermediate_clamp=trace.intermediate_clamp,
    )
    if not result.agrees:
        logger.warning(
            f"Inter-layer backlog mismatch {difference:.3e} for {alloc}: closed form {closed.tolist()}, "
            f"recursion {trace.backlog.tolist()} (intermediate clip: {result.intermediate_clamp})"
        )
    return result
