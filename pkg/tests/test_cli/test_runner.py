"""Тесты исполнения команд CLI и кодов выхода."""

from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import pytest

from src.cli.parser import parse_args
from src.cli.runner import (
    EXIT_LIMIT,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    CommandRunner,
    verdict_summary_path,
)
from src.search.export import CSV_HEADER
from src.settings.registry import SettingsRegistry

BASELINE = ["--cs", "2", "--n", "3", "--cm", "10", "--ttdma", "10", "--tm", "120"]


@pytest.fixture
def registry(tmp_path: Path) -> Iterator[SettingsRegistry]:
    SettingsRegistry._instance = None
    registry = SettingsRegistry(tmp_path / "config.json")
    registry.reset_to_defaults()
    yield registry
    SettingsRegistry._instance = None


class Harness:
    """Запускает команды с перехваченными потоками вывода."""

    def __init__(self, registry: SettingsRegistry, home: Path) -> None:
        self.registry = registry
        self.home = home

    def run(
        self, argv: List[str], environ: Optional[Dict[str, str]] = None
    ) -> Tuple[int, str, str]:
        stdout, stderr = io.StringIO(), io.StringIO()
        runner = CommandRunner(
            self.registry, self.home, stdout=stdout, stderr=stderr, environ=environ or {}
        )
        code = runner.run(parse_args(argv))
        return code, stdout.getvalue(), stderr.getvalue()


@pytest.fixture
def harness(registry: SettingsRegistry, tmp_path: Path) -> Harness:
    return Harness(registry, tmp_path)


def test_analytic_prints_published_period(harness: Harness) -> None:
    code, out, _ = harness.run(["analytic", "--cs", "2", "--n", "1"] + BASELINE[4:])

    assert code == EXIT_OK
    assert out.startswith("20 ms (50 samples/s), binding ")


def test_analytic_json(harness: Harness) -> None:
    code, out, _ = harness.run(["analytic", "--cs", "30", "--n", "4", "--format", "json"])

    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["min_period"] == 40
    assert payload["max_rate_hz"] == 25
    assert payload["protocol"] == "tdma"
    assert payload["params"]["sensor_wcet"] == 30


def test_analytic_bmac_bound_is_not_below_tdma(harness: Harness) -> None:
    _, tdma, _ = harness.run(["analytic", "--format", "json"])
    _, bmac, _ = harness.run(
        ["analytic", "--protocol", "bmac", "--t-b1", "5", "--t-f1", "1", "--format", "json"]
    )
    assert json.loads(bmac)["min_period"] >= json.loads(tdma)["min_period"]


def test_analytic_infeasible_configuration(harness: Harness) -> None:
    code, _, err = harness.run(["analytic", "--cs", "200"])
    assert code == EXIT_VIOLATION
    assert err.startswith("error: ")


def test_check_violation_writes_trace(harness: Harness, tmp_path: Path) -> None:
    code, out, _ = harness.run(["check", "--period", "10"] + BASELINE)

    trace = tmp_path / "traces" / "check-tdma-ts10-cs2-n3.jsonl"
    assert code == EXIT_VIOLATION
    assert out.startswith("DeadlineMiss: ")
    assert f"trace: {trace}" in out
    assert trace.exists()
    summary = json.loads(verdict_summary_path(trace).read_text(encoding="utf-8"))
    assert summary["kind"] == "DeadlineMiss"
    assert summary["requirement"] == "IntraNodeDeadlines"


def test_replay_of_fresh_trace(harness: Harness, tmp_path: Path) -> None:
    trace = tmp_path / "miss.jsonl"
    harness.run(["check", "--period", "10", "--trace-out", str(trace)] + BASELINE)

    code, out, _ = harness.run(["replay", str(trace), "--period", "10"] + BASELINE)

    assert code == EXIT_OK
    assert out.startswith("reproduced: ")


def test_forced_exhaustion_exits_with_limit_code(harness: Harness) -> None:
    code, _, err = harness.run(["check", "--period", "11", "--max-states", "10"] + BASELINE)
    assert code == EXIT_LIMIT
    assert err.startswith("error: ")


def test_check_without_period_is_usage_error(harness: Harness) -> None:
    code, _, err = harness.run(["check"] + BASELINE)
    assert code == EXIT_USAGE
    assert "sensor_period" in err


def test_invalid_parameters_are_usage_errors(harness: Harness) -> None:
    code, _, err = harness.run(["analytic", "--bcet", "5", "--cs", "2"])
    assert code == EXIT_USAGE
    assert "invalid parameters" in err


def test_flag_overrides_parameter_file(harness: Harness, tmp_path: Path) -> None:
    config = tmp_path / "params.json"
    config.write_text(json.dumps({"sensor_wcet": 10, "buffer_size": 2}), encoding="utf-8")

    code, out, err = harness.run(
        ["analytic", "--config", str(config), "--cs", "2", "--format", "json"]
    )

    assert code == EXIT_OK
    assert "warning: command-line flag overrides params.sensor_wcet (10 -> 2)" in err
    assert "buffer_size" not in err
    assert json.loads(out)["params"]["buffer_size"] == 2


def test_unknown_parameter_file_key(harness: Harness, tmp_path: Path) -> None:
    config = tmp_path / "params.json"
    config.write_text(json.dumps({"sensor_wcet": 2, "colour": "red"}), encoding="utf-8")

    code, _, _ = harness.run(["analytic", "--config", str(config)])
    assert code == EXIT_USAGE


def test_flag_overrides_configured_setting(harness: Harness) -> None:
    harness.registry.set_value("explorer", "max_states", 1000)

    code, _, err = harness.run(
        ["check", "--period", "11", "--max-states", "10", "--order", "dfs"] + BASELINE
    )

    assert code == EXIT_LIMIT
    assert "explorer.max_states (1000 -> 10)" in err
    # frontier_order не менялся в config.json, поэтому без предупреждения
    assert "frontier_order" not in err
    assert harness.registry._observers == []


def test_invalid_jobs_environment(harness: Harness) -> None:
    code, _, err = harness.run(
        ["check", "--period", "11"] + BASELINE, environ={"WSAN_SCHED_JOBS": "many"}
    )
    assert code == EXIT_USAGE
    assert "WSAN_SCHED_JOBS" in err


def test_jobs_environment_fallback(harness: Harness) -> None:
    harness.run(
        ["check", "--period", "11", "--max-states", "10"] + BASELINE,
        environ={"WSAN_SCHED_JOBS": "3"},
    )
    assert harness.registry.get_value("search", "jobs") == 3


def test_dump_network(harness: Harness) -> None:
    code, out, _ = harness.run(["dump-network", "--period", "11", "--nodes", "5"])

    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["geometry"]["slot_size"] == 2
    assert [actor["id"] for actor in payload["actors"]][:2] == ["medium", "cpu"]


def test_analytical_sweep_csv(harness: Harness) -> None:
    code, out, _ = harness.run(
        "sweep --method analytical --cs-values 2 --n-values 1-2 --format csv".split()
    )

    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("2,1,analytical,20,50,")
    assert lines[2].startswith("2,2,analytical,12,83,")


def test_sweep_limit_exit_code(harness: Harness, tmp_path: Path) -> None:
    out_file = tmp_path / "table.json"
    argv = "sweep --method model-checking --cs-values 2 --n-values 3 --lo 11 --hi 11"
    code, out, _ = harness.run(
        argv.split() + ["--max-states", "10", "--out", str(out_file), "--format", "json"]
    )

    table = json.loads(out_file.read_text(encoding="utf-8"))
    assert code == EXIT_LIMIT
    assert out.strip() == str(out_file)
    assert table["cells"][0]["verdict"] == "LimitExceeded"
    assert table["metadata"]["max_states"] == 10


def test_sweep_rejects_invalid_cell_values(harness: Harness) -> None:
    code, out, err = harness.run(
        "sweep --method analytical --cs-values 2,0 --n-values 1 --format csv".split()
    )

    assert code == EXIT_USAGE
    assert out == ""
    assert "C_S=0, N=1: sensor_wcet must be ≥ 1" in err
