#!/usr/bin/env python

# Tests for channel loading, statistics and sampling

from pathlib import Path

import numpy as np
import pytest
import yaml

from .channel_model import ChannelModel, load_channel
from .exceptions import ChannelDocumentError, ChannelValidationError
from .sampling import sample_state, sample_states
from .stats import compute_stats, nonempty_subsets

CHANNELS_DIR = Path(__file__).resolve().parent.parent / "channels"
CORRELATED = CHANNELS_DIR / "correlated.yaml"


def _write(tmp_path, document, name="channel.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(document))
    return path


def test_load_correlated():
    ch = load_channel(CORRELATED)
    assert (ch.K, ch.Q) == (2, 2)
    assert ch.pmf[1][2] == pytest.approx(0.1222)
    assert ch.pmf.sum() == pytest.approx(1.0, abs=1e-12)


def test_single_user_perfect_channel():
    ch = ChannelModel(K=1, Q=1, pmf=[0.0, 1.0])
    stats = compute_stats(ch)
    assert stats.expected_layers[0] == 1.0


def test_single_user_pmf_may_be_written_as_one_row(tmp_path):
    for pmf in ([[0, 1]], [0, 1]):
        ch = load_channel(_write(tmp_path, {"K": 1, "Q": 1, "pmf": pmf}))
        assert ch.pmf.tolist() == [0.0, 1.0]
    with pytest.raises(ChannelDocumentError, match=r"expected \(3,\)"):
        load_channel(_write(tmp_path, {"K": 1, "Q": 2, "pmf": [[0, 1]]}))


def test_perturbed_correlated_is_rejected(tmp_path):
    document = load_channel(CORRELATED).to_document()
    document["pmf"][2][2] = 0.0625
    with pytest.raises(ChannelValidationError, match="1.0005"):
        load_channel(_write(tmp_path, document))


def test_tiny_mass_error_is_renormalized():
    pmf = np.array([[0.25, 0.25], [0.25, 0.25 + 5e-10]])
    ch = ChannelModel(K=2, Q=1, pmf=pmf)
    assert ch.pmf.sum() == pytest.approx(1.0, abs=1e-15)


def test_negative_mass_is_rejected():
    with pytest.raises(ChannelValidationError, match="negative"):
        ChannelModel(K=2, Q=1, pmf=[[1.1, -0.1], [0.0, 0.0]])


def test_document_errors(tmp_path):
    with pytest.raises(ChannelDocumentError, match="not found"):
        load_channel(tmp_path / "missing.yaml")
    with pytest.raises(ChannelDocumentError, match="missing field"):
        load_channel(_write(tmp_path, {"K": 2, "Q": 1}))
    with pytest.raises(ChannelDocumentError, match="shape"):
        load_channel(_write(tmp_path, {"K": 2, "Q": 2, "pmf": [[0.5, 0.5], [0.0, 0.0]]}))


def test_index_space_guard():
    with pytest.raises(ChannelValidationError, match="bits"):
        ChannelModel(K=5, Q=31, pmf=[1.0])
    with pytest.raises(ChannelValidationError, match="users"):
        ChannelModel(K=9, Q=1, pmf=[1.0])


def test_correlated_statistics():
    stats = compute_stats(load_channel(CORRELATED))
    assert stats.expected_layers == pytest.approx([0.8522, 0.9748], abs=1e-9)
    assert stats.geq(0, 1) == pytest.approx(0.6739, abs=1e-9)
    assert stats.geq(0, 2) == pytest.approx(0.1783, abs=1e-9)
    assert stats.geq(1, 1) == pytest.approx(0.7585, abs=1e-9)
    assert stats.geq(1, 2) == pytest.approx(0.2163, abs=1e-9)
    assert stats.max_geq({0, 1}, 1) == pytest.approx(0.9503, abs=1e-9)
    assert stats.max_geq({0, 1}, 2) == pytest.approx(0.3326, abs=1e-9)
    assert stats.expected_max({0, 1}) == pytest.approx(1.2829, abs=1e-9)


def test_statistics_invariants():
    rng = np.random.default_rng(0)
    ch = ChannelModel(K=3, Q=3, pmf=rng.dirichlet(np.ones(64)).reshape(4, 4, 4))
    stats = compute_stats(ch)
    assert np.all(np.diff(stats.marginal_geq, axis=1) <= 1e-12)
    assert np.all(stats.marginal_geq[:, 0] == 1.0)
    for u in range(3):
        assert np.array_equal(stats.subset_max_geq[frozenset({u})], stats.marginal_geq[u])
        assert stats.expected_layers[u] == pytest.approx(stats.marginal_geq[u, 1:].sum())
    subsets = nonempty_subsets(3)
    assert len(subsets) == 7
    for small in subsets:
        for large in subsets:
            if small <= large:
                assert np.all(stats.subset_max_geq[small] <= stats.subset_max_geq[large] + 1e-12)


def test_independent_constructor():
    ch = ChannelModel.independent([[0.25, 0.5, 0.25], [0.5, 0.0, 0.5]])
    stats = compute_stats(ch)
    assert stats.expected_layers == pytest.approx([1.0, 1.0])
    assert ch.pmf[1][2] == pytest.approx(0.25)
    shipped = load_channel(CHANNELS_DIR / "independent.yaml")
    np.testing.assert_allclose(shipped.pmf, ch.pmf, atol=1e-12)


def test_deterministic_channel_always_samples_its_state():
    ch = ChannelModel.deterministic((2, 1), Q=2)
    rng = np.random.default_rng(1)
    assert all(sample_state(ch, rng) == (2, 1) for _ in range(100))


def test_sampling_frequency_matches_pmf():
    ch = load_channel(CORRELATED)
    draws = sample_states(ch, np.random.default_rng(7), 1_000_000)
    hits = np.mean((draws[:, 0] == 1) & (draws[:, 1] == 1))
    assert abs(hits - 0.2251) <= 0.003

    counts = np.zeros(ch.shape)
    np.add.at(counts, (draws[:, 0], draws[:, 1]), 1)
    assert np.max(np.abs(counts / draws.shape[0] - ch.pmf)) <= 0.003


def test_sampling_is_reproducible():
    ch = load_channel(CORRELATED)
    first = sample_states(ch, np.random.default_rng(42), 1000)
    second = sample_states(ch, np.random.default_rng(42), 1000)
    assert np.array_equal(first, second)

    rng = np.random.default_rng(42)
    singles = [sample_state(ch, rng) for _ in range(5)]
    assert singles == [tuple(row) for row in first[:5].tolist()]
