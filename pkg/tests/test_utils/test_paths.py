"""Проверки путей рабочего каталога и сведений о машине."""

from __future__ import annotations

from pathlib import Path

from src.utils.paths import DEFAULT_HOME, initialize_home, logs_dir, resolve_home, traces_dir
from src.utils.system_metrics import read_host_info


def test_home_from_environment(tmp_path: Path) -> None:
    assert resolve_home({"WSAN_SCHED_HOME": str(tmp_path)}) == tmp_path
    assert resolve_home({}) == DEFAULT_HOME


def test_initialize_home_creates_layout(tmp_path: Path) -> None:
    home = initialize_home(tmp_path / "work")
    assert logs_dir(home).is_dir()
    assert traces_dir(home).is_dir()
    # повторный вызов не падает
    initialize_home(home)


def test_host_info() -> None:
    info = read_host_info().to_dict()
    assert info["cpu_count"] >= 1
    assert info["memory_total"].endswith("B")
    assert set(info) == {"cpu_count", "memory_total", "platform", "python"}
