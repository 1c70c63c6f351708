#!/usr/bin/env python

# Protocol simulation: configuration, slot loop, decoding and agreement with the fluid analysis

from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest
import yaml

from channel import ChannelModel, load_channel
from gf import ProtocolIntegrityError
from schemes import Allocation, AllocationError

from .config import SimConfig, integer_allocation
from .exceptions import SimConfigError, StateTraceExhausted
from .policy import IdlePolicy, InterLayerPolicy, IntraLayerPolicy, make_policy
from .pools import RetransmissionPools
from .receiver import Receiver
from .report import CSV_COLUMNS, format_summary, format_trials_csv, write_summary
from .transmitter import CodedSymbol
from .trial import run_batch, run_trial

CHANNELS_DIR = Path(__file__).resolve().parent.parent / "channels"


@lru_cache(maxsize=None)
def _correlated():
    return load_channel(CHANNELS_DIR / "correlated.yaml")


def _k11(packets):
    return np.array([[packets, 0], [0, 0]])


def test_config_validation():
    ch = _correlated()
    with pytest.raises(SimConfigError):
        SimConfig(ch, "idle", _k11(10), trials=0)
    with pytest.raises(SimConfigError):
        SimConfig(ch, "both", _k11(10))
    with pytest.raises(SimConfigError):
        SimConfig(ch, "idle", _k11(10), scheduling="round-robin")
    with pytest.raises(AllocationError, match="layer index 3 beyond Q=2"):
        SimConfig(ch, "idle", np.array([[1, 0, 2], [0, 0, 0]]))
    with pytest.raises(AllocationError):
        SimConfig(ch, "idle", np.array([[1.5, 0], [0, 0]]))
    with pytest.raises(AllocationError):
        SimConfig(ch, "idle", np.zeros((2, 2), dtype=int))
    with pytest.raises(SimConfigError):
        SimConfig(ChannelModel.independent([[0.5, 0.5]] * 3), "idle", _k11(10))

    deaf = ChannelModel.independent([[0.5, 0.5, 0.0], [1.0, 0.0, 0.0]])
    with pytest.raises(SimConfigError):
        SimConfig(deaf, "idle", np.array([[0, 0], [5, 0]]))
    with pytest.raises(AllocationError):
        SimConfig(deaf, "idle", np.array([[0, 5], [0, 0]]))


def test_integer_allocation():
    counts = integer_allocation(Allocation([[0.6739, 0.0], [0.0, 0.3326]]), 4000)
    assert counts.tolist() == [[2678, 0], [0, 1322]]
    with pytest.raises(SimConfigError):
        integer_allocation(Allocation([[1.0, 0.0], [0.0, 0.0]]), 0)


def test_policies():
    assert isinstance(make_policy("idle"), IdlePolicy)
    assert make_policy("inter").default_scheduling == "randomized"
    assert make_policy("intra").default_scheduling == "sequential"
    with pytest.raises(ValueError):
        make_policy("both")

    pools = RetransmissionPools()
    assert InterLayerPolicy().select(pools, 0) is None
    pools.add(0, packet=4, layer=0)
    pools.add(1, packet=2, layer=1)
    pools.add(0, packet=7, layer=1)
    assert IdlePolicy().select(pools, 1) is None
    first, second = IntraLayerPolicy().select(pools, 1)
    assert first.tolist() == [1] and second.tolist() == [0]
    assert IntraLayerPolicy().select(pools, 2) is None
    first, second = InterLayerPolicy().select(pools, 1)
    assert first.tolist() == [0, 1] and second.tolist() == [0]


def test_deterministic_channel_needs_no_retransmissions():
    ch = ChannelModel.deterministic((2, 2), Q=2)
    for variant in ("idle", "intra", "inter"):
        result = run_trial(SimConfig(ch, variant, np.array([[3, 1], [2, 4]])), 0)
        assert result.slots_total == result.slots_phase1 == 5
        assert result.coded == (0, 0)
        assert result.decoded
    result = run_trial(SimConfig(ch, "idle", np.array([[3, 0], [0, 1]])), 0)
    assert result.slots_total == 3
    assert result.rates == (1.0, 1 / 3)


def test_trials_are_reproducible():
    cfg = SimConfig(_correlated(), "inter", np.array([[40, 10], [15, 20]]), seed=3, trials=1)
    first, second = run_trial(cfg, 0), run_trial(cfg, 0)
    assert first == second
    assert run_batch(cfg).results == (first,)
    assert run_trial(cfg, 1) != first


def test_every_packet_is_accounted_for():
    cfg = SimConfig(_correlated(), "intra", np.array([[60, 30], [50, 20]]), seed=5)
    for trial in range(3):
        result = run_trial(cfg, trial)
        assert result.decoded
        assert result.direct[0] + result.coded[0] == 90
        assert result.direct[1] + result.coded[1] == 70
        assert result.coded[0] > 0 and result.coded[1] > 0
        assert result.slots_phase1 <= result.slots_total


def test_feedback_causality():
    cfg = SimConfig(_correlated(), "inter", np.array([[30, 10], [20, 15]]), seed=11)
    ch = cfg.channel
    rng = np.random.default_rng(0)
    flat = rng.choice(ch.pmf.size, size=4000, p=ch.pmf.ravel())
    trace = [tuple(int(n) for n in np.unravel_index(i, ch.shape)) for i in flat]
    cut = 25
    other = trace[:cut] + [(0, 0)] * 5 + trace[cut:]

    a = run_trial(cfg, 0, states=trace, record=True)
    b = run_trial(cfg, 0, states=other, record=True)
    assert a.slots_total > cut + 1
    assert a.decisions[: cut + 1] == b.decisions[: cut + 1]
    assert a.decisions != b.decisions

    with pytest.raises(StateTraceExhausted):
        run_trial(cfg, 0, states=trace[:3])


def test_inconsistent_symbol_is_an_integrity_failure():
    receiver = Receiver(user=0, own_packets=2, peer_packets=0, payload_size=1)
    receiver.on_pool_growth(0)
    receiver.on_pool_growth(1)
    empty = np.zeros(0, dtype=np.uint8)
    assert receiver.receive(CodedSymbol(0, (np.array([1, 0], dtype=np.uint8), empty), np.array([9], dtype=np.uint8)))
    with pytest.raises(ProtocolIntegrityError):
        receiver.receive(CodedSymbol(1, (np.array([1, 0], dtype=np.uint8), empty), np.array([8], dtype=np.uint8)))


def test_reports(tmp_path):
    report = run_batch(SimConfig(_correlated(), "idle", np.array([[20, 5], [5, 10]]), seed=1, trials=3))
    lines = format_trials_csv(report).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4
    assert all(line.endswith(",true") for line in lines[1:])

    summary = yaml.safe_load(write_summary(report, tmp_path / "summary.yaml").read_text())
    assert summary["trials"] == 3
    assert summary["all_decoded"] is True
    assert summary["mean_rate1"] == pytest.approx(float(report.mean_rates[0]))
    assert "ANALYTIC" in format_summary(report)


def test_variant_dominance():
    slots = {}
    for variant in ("idle", "intra", "inter"):
        cfg = SimConfig(_correlated(), variant, _k11(500), seed=2, trials=3)
        slots[variant] = run_batch(cfg).mean_slots_total
    assert slots["inter"] <= slots["intra"] * 1.01
    assert slots["intra"] <= slots["idle"] * 1.01


def test_error_shrinks_with_packet_count():
    errors = []
    for packets in (100, 1000):
        report = run_batch(SimConfig(_correlated(), "idle", _k11(packets), seed=7, trials=20))
        errors.append(abs(report.mean_rates[0] - 0.71757))
    assert errors[1] <= errors[0] + 0.005


@pytest.mark.parametrize("variant, expected", [("idle", 0.71757), ("inter", 0.85220)])
def test_single_packet_stream_matches_analysis(variant, expected):
    report = run_batch(SimConfig(_correlated(), variant, _k11(10_000), seed=7, trials=10))
    assert report.all_decoded
    assert report.mean_rates[0] == pytest.approx(expected, rel=0.02)
    assert report.analytic[0] == pytest.approx(expected, abs=1e-5)


def test_outer_bound_corner_in_simulation():
    alloc = integer_allocation(Allocation([[0.6739, 0.0], [0.0, 0.3326]]), 10_000)
    report = run_batch(SimConfig(_correlated(), "inter", alloc, seed=7, trials=10))
    assert report.all_decoded
    np.testing.assert_allclose(report.mean_rates, [0.6739, 0.3326], rtol=0.02)


def test_pool_windows_skip_decoded_packets():
    pools = RetransmissionPools(window=2)
    for packet in range(5):
        pools.add(0, packet=10 + packet, layer=packet % 2)
    assert pools.window(0).tolist() == [0, 1]
    assert pools.window(0, layer=0).tolist() == [0, 2]
    pools.resolve(0, 0)
    assert pools.window(0).tolist() == [1, 2]
    assert pools.window(0, layer=0).tolist() == [2, 4]
    assert pools.packets(0, np.array([1, 4])).tolist() == [11, 14]
    assert pools.open_count(0) == 4
    assert pools.window(1).size == 0
    with pytest.raises(ValueError):
        RetransmissionPools(window=0)


@pytest.mark.parametrize("window", [1, 3, 64])
def test_any_coding_window_decodes_every_packet(window):
    cfg = SimConfig(_correlated(), "inter", np.array([[80, 20], [30, 40]]), seed=4, window=window)
    result = run_trial(cfg, 0)
    assert result.decoded
    assert result.direct[0] + result.coded[0] == 100
    assert result.direct[1] + result.coded[1] == 70
    with pytest.raises(SimConfigError):
        SimConfig(_correlated(), "inter", np.array([[1, 0], [0, 1]]), window=0)
