"""Тесты точки входа wsan-sched."""

from __future__ import annotations

import json
import logging
import tomllib
from pathlib import Path
from typing import Iterator

import pytest

from src import __version__
from src.main import initialize_settings, main, setup_logging_from_settings
from src.settings.registry import SettingsRegistry


@pytest.fixture(autouse=True)
def isolated_home(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Iterator[Path]:
    home = tmp_path / "home"
    monkeypatch.setenv("WSAN_SCHED_HOME", str(home))
    monkeypatch.setenv("WSAN_SCHED_JOBS", "")
    monkeypatch.delenv("WSAN_SCHED_JOBS")
    monkeypatch.chdir(tmp_path)
    SettingsRegistry._instance = None
    yield home
    SettingsRegistry._instance = None
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    logging.disable(logging.NOTSET)


def test_main_runs_analytic_and_creates_home(
    isolated_home: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = main(["analytic", "--cs", "2", "--n", "1", "--format", "json"])

    assert code == 0
    assert json.loads(capsys.readouterr().out)["min_period"] == 20
    assert (isolated_home / "config.json").exists()
    assert (isolated_home / "traces").is_dir()
    assert (isolated_home / "logs" / "wsan-sched.log").exists()


def test_dotenv_supplies_jobs(tmp_path: Path, isolated_home: Path) -> None:
    (tmp_path / ".env").write_text("WSAN_SCHED_JOBS=2\n", encoding="utf-8")

    code = main(["check", "--period", "11", "--max-states", "10"])

    assert code == 3
    assert SettingsRegistry().get_value("search", "jobs") == 2


def test_usage_error_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["analytic", "--no-such-flag"]) == 2
    err = capsys.readouterr().err
    assert "usage: wsan-sched" in err
    assert "error: unrecognized arguments: --no-such-flag" in err


def test_version_flag(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.strip() == f"wsan-sched {__version__}"


def test_broken_config_is_reported(isolated_home: Path, capsys: pytest.CaptureFixture[str]) -> None:
    isolated_home.mkdir(parents=True)
    (isolated_home / "config.json").write_text("{broken", encoding="utf-8")

    assert main(["analytic"]) == 2
    assert "error: " in capsys.readouterr().err


def test_setup_logging_disabled(tmp_path: Path) -> None:
    registry = initialize_settings(tmp_path / "config.json")
    registry.set_value("logging", "enabled", False)

    setup_logging_from_settings(tmp_path, registry)

    assert logging.root.manager.disable >= logging.CRITICAL


def test_verbose_switches_to_debug(tmp_path: Path) -> None:
    registry = initialize_settings(tmp_path / "config.json")

    setup_logging_from_settings(tmp_path, registry, verbose=True)

    assert logging.getLogger().level == logging.DEBUG


def test_setting_changes_are_journaled(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    registry = initialize_settings(tmp_path / "config.json")
    initialize_settings(tmp_path / "config.json")

    with caplog.at_level(logging.DEBUG, logger="src.settings.observers"):
        registry.apply_overrides("search", {"period_hi": 80, "period_lo": None})

    journal = [r.getMessage() for r in caplog.records if r.name == "src.settings.observers"]
    assert journal == ["Setting changed: search.period_hi (200 -> 80)"]


def test_dev_setup_script_follows_the_manifest() -> None:
    root = Path(__file__).resolve().parents[1]
    script = (root / "setup_dev.sh").read_text(encoding="utf-8")
    manifest = tomllib.loads((root / "pyproject.toml").read_text(encoding="utf-8"))

    markers = manifest["tool"]["pytest"]["ini_options"]["markers"]
    assert any(marker.startswith("acceptance:") for marker in markers)
    assert "pytest -m acceptance" in script
    assert "wsan-sched" in manifest["project"]["scripts"]
    assert "wsan-sched --version" in script
    assert 'install -e ".[dev]"' in script
