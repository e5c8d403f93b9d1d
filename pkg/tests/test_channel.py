"""Loss-model tests: the split into forward and conditional reverse loss must
keep the overall round-failure rate at exactly p."""

import random

import pytest

from ncbwt.channel import (
    ChannelParams,
    ScriptedChannel,
    StochasticChannel,
    TraceExhausted,
    load_trace,
    parse_trace,
)


def test_round_failure_identity():
    for p in (0.0, 0.1, 0.25, 0.5, 0.7, 0.9):
        for alpha in (0.1, 0.3, 0.5, 0.7, 1.0):
            params = ChannelParams(p, alpha)
            f = params.forward_loss
            q = params.reverse_loss
            assert f + (1.0 - f) * q == pytest.approx(p, abs=1e-12)


def test_alpha_one_means_forward_only():
    params = ChannelParams(0.5, 1.0)
    assert params.forward_loss == 0.5
    assert params.reverse_loss == 0.0


def test_params_validation():
    with pytest.raises(ValueError):
        ChannelParams(-0.1, 0.5)
    with pytest.raises(ValueError):
        ChannelParams(0.95, 0.5)
    with pytest.raises(ValueError):
        ChannelParams(0.5, 0.0)
    with pytest.raises(ValueError):
        ChannelParams(0.5, 1.1)


def test_stochastic_round_failure_rate():
    params = ChannelParams(0.4, 0.6)
    channel = StochasticChannel(params, random.Random(42))
    trials = 1_000_000
    failures = 0
    for _ in range(trials):
        if not channel.forward_delivered():
            failures += 1
        elif not channel.reverse_delivered():
            failures += 1
    assert abs(failures / trials - 0.4) < 0.002


def test_stochastic_determinism():
    params = ChannelParams(0.3, 0.7)
    a = StochasticChannel(params, seed=9)
    b = StochasticChannel(params, seed=9)
    seq_a = [a.forward_delivered() for _ in range(100)]
    seq_b = [b.forward_delivered() for _ in range(100)]
    assert seq_a == seq_b


def test_scripted_channel_order():
    ch = ScriptedChannel([True, False, True])
    assert ch.forward_delivered() is True
    assert ch.reverse_delivered() is False
    assert ch.forward_delivered() is True
    assert ch.remaining == 0
    with pytest.raises(TraceExhausted):
        ch.forward_delivered()


def test_parse_trace():
    text = "D L  # first round\n\nL\nD D # done\n"
    assert parse_trace(text) == [True, False, False, True, True]
    assert parse_trace("") == []
    with pytest.raises(ValueError):
        parse_trace("D X")


def test_load_trace(tmp_path):
    path = tmp_path / "t.trace"
    path.write_text("D L\nD\n")
    assert load_trace(str(path)) == [True, False, True]
