#!/usr/bin/env python
"""
Two-phase feedback scheme with uncoded Phase1 and network-coded Phase2.

Phase1 sends k[u, q] uncoded packets on layer q until someone receives each
one; layer q is done at t_unc_q = (k[0, q] + k[1, q]) / Pr[max >= q]. Phase2
sends random combinations of the overheard packets on every layer. The three
variants differ in what a layer does between t_unc_q and t_unc:

    idle   the layer stays silent
    intra  it sends combinations of its own overheard packets
    inter  it sends combinations of every overheard packet on every layer
"""

import logging
from collections.abc import Callable
from dataclasses import replace

import numpy as np

from channel.stats import ChannelStats
from geometry.types import RatePoint

from .exceptions import AllocationError
from .types import Allocation, PhaseEvaluation

logger = logging.getLogger(__name__)


def overheard_fraction(p: np.ndarray, m: np.ndarray) -> np.ndarray:
    """eta[u, q] = 1 - Pr[N_u >= q] / Pr[max >= q]; zero on layers nobody receives."""
    received = m > 0.0
    ratio = np.divide(p, m, out=np.ones_like(p), where=received)
    return np.clip(1.0 - ratio, 0.0, 1.0)


def evaluate_phase1(stats: ChannelStats, alloc: Allocation) -> PhaseEvaluation:
    """Variant-independent part: layer finish times and overheard backlogs."""
    p, m, _ = stats.layer_arrays()
    if alloc.Q != stats.Q:
        raise AllocationError(f"allocation covers {alloc.Q} layers, channel has Q={stats.Q}")
    k = alloc.k
    load = k.sum(axis=0)
    dead = np.flatnonzero((load > 0) & (m <= 0))
    if dead.size:
        raise AllocationError(f"positive allocation on layer {dead[0] + 1}, which neither user ever receives")

    t_unc_q = np.divide(load, m, out=np.zeros_like(load), where=load > 0)
    eta = overheard_fraction(p, m)
    return PhaseEvaluation(
        alloc=alloc,
        t_unc_q=t_unc_q,
        t_unc=float(t_unc_q.max()),
        k_rem_uq=k * eta,
        eta_uq=eta,
    )


def _idle_credit(stats: ChannelStats, pe: PhaseEvaluation) -> np.ndarray:
    """(2, Q) packets user u can receive on layer q while it waits for the slowest layer."""
    p, _, _ = stats.layer_arrays()
    return (pe.t_unc - pe.t_unc_q)[np.newaxis, :] * p


def _finish(stats: ChannelStats, pe: PhaseEvaluation, k_rem_u: np.ndarray, variant: str) -> PhaseEvaluation:
    _, _, expected = stats.layer_arrays()
    k_rem_u = np.maximum(k_rem_u, 0.0)
    t_nc_u = np.zeros(2)
    feasible = True
    for u in range(2):
        if k_rem_u[u] <= 0.0:
            continue
        if expected[u] > 0.0:
            t_nc_u[u] = k_rem_u[u] / expected[u]
        else:
            t_nc_u[u] = np.inf
            feasible = False

    t_nc = float(t_nc_u.max())
    t = pe.t_unc + t_nc
    if feasible:
        rates = RatePoint(tuple(pe.alloc.totals / t))
    else:
        logger.debug(f"{variant}: user backlog {k_rem_u.tolist()} can never be delivered")
        rates = RatePoint((0.0, 0.0))
    return replace(
        pe,
        variant=variant,
        k_rem_u=k_rem_u,
        t_nc_u=t_nc_u,
        t_nc=t_nc,
        t=t,
        rates=rates,
        feasible=feasible,
    )


def finalize_idle(stats: ChannelStats, pe: PhaseEvaluation) -> PhaseEvaluation:
    return _finish(stats, pe, pe.k_rem_uq.sum(axis=1), "idle")


def finalize_intra_layer(stats: ChannelStats, pe: PhaseEvaluation) -> PhaseEvaluation:
    """A finished layer pays down its own overheard packets only, never below zero."""
    per_layer = np.maximum(pe.k_rem_uq - _idle_credit(stats, pe), 0.0)
    return _finish(stats, pe, per_layer.sum(axis=1), "intra")


def finalize_inter_layer(stats: ChannelStats, pe: PhaseEvaluation) -> PhaseEvaluation:
    """A finished layer pays down the pooled backlog; one positive part over the layer sum."""
    pooled = (pe.k_rem_uq - _idle_credit(stats, pe)).sum(axis=1)
    return _finish(stats, pe, np.maximum(pooled, 0.0), "inter")


Finalizer = Callable[[ChannelStats, PhaseEvaluation], PhaseEvaluation]

VARIANTS: dict[str, Finalizer] = {
    "idle": finalize_idle,
    "intra": finalize_intra_layer,
    "inter": finalize_inter_layer,
}


def _finalizer(variant: str) -> Finalizer:
    try:
        return VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant '{variant}', expected one of {sorted(VARIANTS)}") from None


def evaluate(stats: ChannelStats, alloc: Allocation, variant: str) -> PhaseEvaluation:
    return _finalizer(variant)(stats, evaluate_phase1(stats, alloc))


def evaluate_rates_batch(stats: ChannelStats, k: np.ndarray, variant: str) -> np.ndarray:
    """Rates for a stack of allocations, shape (n, 2, Q) -> (n, 2).

    Rows that are all zero, load a layer nobody receives, or leave a backlog
    for a user who receives nothing get rate (0, 0).
    """
    _finalizer(variant)
    p, m, expected = stats.layer_arrays()
    k = np.asarray(k, dtype=float)
    if k.ndim == 2:
        k = k[np.newaxis]
    if k.shape[1:] != (2, stats.Q):
        raise ValueError(f"allocation stack of shape {k.shape}, expected (n, 2, {stats.Q})")

    load = k.sum(axis=1)
    received = m > 0.0
    t_unc_q = np.divide(load, m, out=np.zeros_like(load), where=(load > 0) & received)
    t_unc = t_unc_q.max(axis=1)
    invalid = np.any((load > 0) & ~received, axis=1) | (load.sum(axis=1) <= 0.0)

    k_rem_uq = k * overheard_fraction(p, m)[np.newaxis]
    if variant == "idle":
        k_rem_u = k_rem_uq.sum(axis=2)
    else:
        credit = (t_unc[:, np.newaxis] - t_unc_q)[:, np.newaxis, :] * p[np.newaxis]
        if variant == "intra":
            k_rem_u = np.maximum(k_rem_uq - credit, 0.0).sum(axis=2)
        else:
            k_rem_u = np.maximum((k_rem_uq - credit).sum(axis=2), 0.0)

    can_deliver = expected > 0.0
    t_nc_u = np.divide(k_rem_u, expected, out=np.zeros_like(k_rem_u), where=can_deliver[np.newaxis, :])
    invalid |= np.any((k_rem_u > 0.0) & ~can_deliver[np.newaxis, :], axis=1)

    t = t_unc + t_nc_u.max(axis=1)
    rates = np.zeros((k.shape[0], 2))
    valid = ~invalid
    rates[valid] = k[valid].sum(axis=2) / t[valid, np.newaxis]
    return rates
