"""Проверки механизма наблюдателей за настройками."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterator

import pytest

from src.settings.observers import FlagOverrideObserver, LoggingSettingsObserver
from src.settings.registry import SettingsRegistry


class DummyObserver:
    def __init__(self) -> None:
        self.triggered = False
        self.payload: object = None

    def on_setting_changed(
        self, group: str, key: str, old_value: object, new_value: object
    ) -> None:
        self.triggered = True
        self.payload = (group, key, old_value, new_value)


class FailingObserver:
    def __init__(self) -> None:
        self.counter = 0

    def on_setting_changed(
        self, group: str, key: str, old_value: object, new_value: object
    ) -> None:
        self.counter += 1
        raise RuntimeError("observer failed")


@pytest.fixture
def registry(tmp_path: Path) -> Iterator[SettingsRegistry]:
    SettingsRegistry._instance = None
    reg = SettingsRegistry(tmp_path / "config.json")
    reg.reset_to_defaults()
    yield reg
    SettingsRegistry._instance = None


def test_observer_receives_event(registry: SettingsRegistry) -> None:
    observer = DummyObserver()
    registry.register_observer(observer)
    registry.set_value("search", "strategy", "binary")
    assert observer.payload == ("search", "strategy", "linear", "binary")


def test_unregister_observer(registry: SettingsRegistry) -> None:
    observer = DummyObserver()
    registry.register_observer(observer)
    registry.unregister_observer(observer)
    registry.set_value("search", "strategy", "binary")
    assert observer.triggered is False


def test_failing_observer_does_not_block_others(registry: SettingsRegistry) -> None:
    failing = FailingObserver()
    observer = DummyObserver()
    registry.register_observer(failing)
    registry.register_observer(observer)
    registry.set_value("search", "jobs", 2)
    assert observer.triggered is True
    assert failing.counter == 1


def test_logging_observer(registry: SettingsRegistry, caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level("DEBUG")
    registry.register_observer(LoggingSettingsObserver())
    registry.set_value("search", "jobs", 2)
    assert any("Setting changed" in record.message for record in caplog.records)


def test_flag_override_warns_only_on_change(registry: SettingsRegistry) -> None:
    stream = io.StringIO()
    observer = FlagOverrideObserver(stream)
    registry.register_observer(observer)

    registry.apply_overrides("search", {"jobs": 1, "period_hi": 50})

    assert observer.overridden == ["search.period_hi"]
    assert stream.getvalue() == (
        "warning: command-line flag overrides search.period_hi (200 -> 50)\n"
    )


def test_flag_override_respects_watched_keys() -> None:
    stream = io.StringIO()
    observer = FlagOverrideObserver(stream, watched={"params.sensor_wcet"})

    observer.on_setting_changed("params", "buffer_size", 3, 5)
    observer.on_setting_changed("params", "sensor_wcet", 10, 2)

    assert observer.overridden == ["params.sensor_wcet"]
    assert "params.buffer_size" not in stream.getvalue()
