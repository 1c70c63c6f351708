#!/usr/bin/env python
"""
Slot loop of one trial and the batch runner.

Each slot one joint state (N_1, N_2) is drawn and applied to all layers:
user u hears layers 1..N_u. The trial ends once every layer has delivered
its uncoded packets and both users can decode their pools.
"""

import logging
from collections.abc import Iterable, Iterator

import numpy as np

from channel.sampling import sample_states
from channel.stats import compute_stats
from geometry.types import RatePoint
from schemes.ach2 import evaluate
from schemes.types import Allocation

from .config import SimConfig
from .exceptions import StateTraceExhausted
from .policy import make_policy
from .receiver import Receiver
from .report import SimReport, TrialResult
from .transmitter import Transmitter

logger = logging.getLogger(__name__)

STATE_BLOCK = 1024


def trial_rngs(seed: int, trial: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent channel and coding streams for one trial."""
    channel_seq, coding_seq = np.random.SeedSequence([seed, trial]).spawn(2)
    return np.random.default_rng(channel_seq), np.random.default_rng(coding_seq)


def _sampled_states(cfg: SimConfig, rng: np.random.Generator) -> Iterator[tuple[int, int]]:
    while True:
        for n1, n2 in sample_states(cfg.channel, rng, STATE_BLOCK):
            yield int(n1), int(n2)


def run_trial(
    cfg: SimConfig,
    trial_index: int,
    states: Iterable[tuple[int, int]] | None = None,
    record: bool = False,
) -> TrialResult:
    """Simulate one trial; `states` replays a fixed state trace instead of sampling."""
    channel_rng, coding_rng = trial_rngs(cfg.seed, trial_index)
    policy = make_policy(cfg.variant)
    scheduling = cfg.scheduling or policy.default_scheduling
    tx = Transmitter(cfg.alloc, policy, scheduling, cfg.payload_size, coding_rng, cfg.window)
    totals = cfg.alloc.sum(axis=1)
    receivers = [Receiver(u, int(totals[u]), int(totals[1 - u]), cfg.payload_size) for u in range(2)]
    stream = iter(states) if states is not None else _sampled_states(cfg, channel_rng)

    slots = 0
    slots_phase1 = 0
    decisions = [] if record else None
    while not (tx.uncoded_done and all(r.complete for r in receivers)):
        plan = tx.plan_slot()
        if record:
            decisions.append(tuple(t.decision for t in plan))
        try:
            state = next(stream)
        except StopIteration:
            raise StateTraceExhausted(f"state trace ended after {slots} slots") from None
        slots += 1

        for t in plan:
            if t.kind != "coded":
                continue
            for v in range(2):
                if state[v] > t.layer:
                    receivers[v].receive(t.symbol)
        for v, receiver in enumerate(receivers):
            tx.acknowledge(v, receiver.newly_decoded())

        for event in tx.apply_feedback(plan, state):
            payload = tx.payloads[event.user][event.packet]
            if event.kind == "direct":
                receivers[event.user].on_direct(event.packet, payload)
            else:
                receivers[1 - event.user].on_overheard(event.pool_position, payload)
                receivers[event.user].on_pool_growth(event.packet)
        if not slots_phase1 and tx.uncoded_done:
            slots_phase1 = slots

    decode_ok = []
    for u, receiver in enumerate(receivers):
        decoded = receiver.reconstruct()
        decode_ok.append(decoded is not None and np.array_equal(decoded, tx.payloads[u]))
    rates = tuple(float(totals[u]) / slots if slots else 0.0 for u in range(2))
    result = TrialResult(
        trial=trial_index,
        slots_phase1=slots_phase1,
        slots_total=slots,
        rates=rates,
        decode_ok=tuple(decode_ok),
        direct=tuple(len(r.direct) for r in receivers),
        coded=tuple(len(r.pool_packets) for r in receivers),
        discarded=tuple(r.discarded for r in receivers),
        decisions=tuple(decisions) if record else None,
    )
    logger.debug(
        f"Trial {trial_index}: {slots_phase1}/{slots} slots, rates ({rates[0]:.5f}, {rates[1]:.5f}), "
        f"decoded {result.decode_ok}"
    )
    return result


def analytic_rates(cfg: SimConfig) -> RatePoint:
    """Fluid-limit rates of the configured allocation."""
    return evaluate(compute_stats(cfg.channel), Allocation(cfg.alloc), cfg.variant).rates


def run_batch(cfg: SimConfig) -> SimReport:
    """Run `cfg.trials` independent trials; results are ordered by trial index."""
    results = []
    for trial in range(cfg.trials):
        results.append(run_trial(cfg, trial))
        if (trial + 1) % 10 == 0:
            logger.info(f"Completed {trial + 1}/{cfg.trials} trials")
    report = SimReport(
        variant=cfg.variant,
        alloc=cfg.alloc,
        seed=cfg.seed,
        results=tuple(results),
        analytic=analytic_rates(cfg),
    )
    failed = [r.trial for r in results if not r.decoded]
    if failed:
        logger.error(f"Decoding failed in trials {failed}")
    logger.info(
        f"{cfg.variant}: mean rates ({report.mean_rates[0]:.5f}, {report.mean_rates[1]:.5f}) "
        f"vs analytic {report.analytic}"
    )
    return report
