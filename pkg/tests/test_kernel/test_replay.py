"""Тесты повтора трасс контрпримеров."""

from __future__ import annotations

import pytest

from src.kernel.exceptions import ReplayDivergence
from src.kernel.explorer import explore
from src.kernel.replay import replay
from tests.test_kernel.sample_models import counting_model, producer_consumer


def test_replay_reproduces_assertion_failure() -> None:
    model = counting_model(limit=3)
    verdict = explore(model)
    assert replay(model, verdict.trace)


def test_replay_reproduces_deadline_miss_with_delay_choices() -> None:
    model = producer_consumer(period=5, wcet=7)
    verdict = explore(model)
    assert replay(model, verdict.trace)


def test_empty_trace_replays() -> None:
    assert replay(counting_model(limit=3), [])


def test_mutated_time_diverges() -> None:
    model = counting_model(limit=3)
    trace = list(explore(model).trace)
    trace[0] = trace[0].shifted(1)
    with pytest.raises(ReplayDivergence) as error:
        replay(model, trace)
    assert error.value.index == 0


def test_truncated_trace_diverges_at_end() -> None:
    model = counting_model(limit=3)
    trace = list(explore(model).trace)[:-1]
    with pytest.raises(ReplayDivergence) as error:
        replay(model, trace)
    assert error.value.event is None
