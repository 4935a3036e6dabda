"""Тесты групп настроек и базового класса."""

from __future__ import annotations

import pytest

from src.settings.exceptions import SettingsNotFoundError, SettingsValidationError
from src.settings.groups import ExplorerSettings, LoggingSettings, NetworkSettings, SearchSettings


def test_logging_settings_ranges() -> None:
    settings = LoggingSettings()
    settings.set("max_file_size_mb", 100)
    with pytest.raises(SettingsValidationError):
        settings.set("max_archived_files", 0)


def test_explorer_defaults() -> None:
    settings = ExplorerSettings()
    assert settings.get("max_states") == 5_000_000
    assert settings.get("max_time_horizon_ms") == 0
    assert settings.get("frontier_order") == "bfs"
    assert settings.get("deadline_inclusive") is False


@pytest.mark.parametrize(
    "key, value",
    [
        ("max_states", 0),
        ("max_states", True),
        ("max_states", "10"),
        ("frontier_order", "random"),
        ("progress_every", 0),
        ("deadline_inclusive", 1),
    ],
)
def test_explorer_rejects_invalid_values(key: str, value: object) -> None:
    with pytest.raises(SettingsValidationError):
        ExplorerSettings().set(key, value)


def test_search_settings() -> None:
    settings = SearchSettings()
    settings.set("strategy", "binary")
    settings.set("jobs", 8)
    assert settings.to_dict() == {"period_lo": 1, "period_hi": 200, "strategy": "binary", "jobs": 8}
    with pytest.raises(SettingsValidationError):
        settings.set("period_lo", 0)


def test_network_from_dict_and_reset() -> None:
    settings = NetworkSettings()
    settings.from_dict({"slot_offset_ms": 5, "packet_release": "completion", "unknown": 1})
    assert settings.get("slot_offset_ms") == 5
    assert settings.get("packet_release") == "completion"
    settings.reset_to_defaults()
    assert settings.get("packet_release") == "handoff"
    assert settings.get_default("slot_size_ms") == 0


def test_unknown_key_raises_not_found() -> None:
    settings = SearchSettings()
    with pytest.raises(SettingsNotFoundError):
        settings.get("unknown")
