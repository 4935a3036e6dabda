"""Тесты разбора аргументов командной строки."""

from __future__ import annotations

import argparse
from pathlib import Path

import pytest

from src.analysis.bounds import FormulaVariant, ResponseLowerBound
from src.cli.commands import (
    AnalyticCommand,
    CheckCommand,
    DumpNetworkCommand,
    ExplorerFlags,
    OutputFormat,
    ReplayCommand,
    SweepCommand,
    TraceCommand,
)
from src.cli.exceptions import UsageError
from src.cli.parser import int_list, parse_args
from src.model.params import MediumProtocol
from src.search.sweep import Method, Strategy


def test_analytic_flags_map_to_task_fields() -> None:
    command = parse_args(["analytic", "--cs", "2", "--n", "1", "--cm", "10", "--ttdma", "10"])

    assert isinstance(command, AnalyticCommand)
    assert command.params.task == {
        "sensor_wcet": 2,
        "buffer_size": 1,
        "misc_wcet": 10,
        "tdma_superframe": 10,
    }
    assert command.params.bmac == {}
    assert command.variant is FormulaVariant.EQ6_CONSISTENT
    assert command.lower_bound is ResponseLowerBound.WCET
    assert command.protocol is MediumProtocol.TDMA
    assert command.fmt is OutputFormat.TEXT


def test_check_collects_explorer_and_bmac_flags() -> None:
    command = parse_args(
        [
            "check",
            "--period",
            "11",
            "--protocol",
            "bmac",
            "--t-b1",
            "3",
            "--bmac-k",
            "2",
            "--tx-times",
            "5,6",
            "--max-states",
            "100",
            "--order",
            "dfs",
            "--wcet-only",
            "--format",
            "json",
        ]
    )

    assert isinstance(command, CheckCommand)
    assert command.protocol is MediumProtocol.BMAC
    assert command.params.task == {"sensor_period": 11, "packet_tx_times": (5, 6)}
    assert command.params.bmac == {"t_b1": 3, "k": 2}
    assert command.explorer.max_states == 100
    assert command.explorer.frontier_order == "dfs"
    assert command.explorer.worst_case_delays is True
    assert command.explorer.deadline_inclusive is None
    assert command.fmt is OutputFormat.JSON


def test_unset_explorer_flags_stay_none() -> None:
    command = parse_args(["check", "--period", "11"])
    assert isinstance(command, CheckCommand)
    assert command.explorer == ExplorerFlags()
    assert command.geometry.number_of_nodes is None


def test_sweep_defaults_cover_published_grid() -> None:
    command = parse_args(["sweep"])

    assert isinstance(command, SweepCommand)
    assert command.sensor_wcets == (2, 10, 20, 30)
    assert command.buffer_sizes == tuple(range(1, 11))
    assert command.method is Method.BOTH
    assert command.strategy is None
    assert command.fmt is OutputFormat.MARKDOWN


def test_sweep_range_and_strategy() -> None:
    argv = "sweep --cs-values 2 --n-values 1-3 --lo 5 --hi 50 --strategy binary"
    command = parse_args(argv.split() + ["--method", "analytical", "--format", "csv"])
    assert isinstance(command, SweepCommand)
    assert command.buffer_sizes == (1, 2, 3)
    assert (command.period_lo, command.period_hi) == (5, 50)
    assert command.strategy is Strategy.BINARY
    assert command.method is Method.ANALYTICAL
    assert command.fmt is OutputFormat.CSV


def test_sweep_rejects_cell_flags() -> None:
    with pytest.raises(UsageError):
        parse_args(["sweep", "--cs", "2"])


def test_sweep_rejects_inverted_range() -> None:
    with pytest.raises(UsageError) as exc_info:
        parse_args(["sweep", "--lo", "20", "--hi", "10"])
    assert "--hi" in exc_info.value.reason


def test_trace_and_replay_paths(tmp_path: Path) -> None:
    out = tmp_path / "run.jsonl"
    trace = parse_args(["trace", "--period", "10", "--out", str(out)])
    replay = parse_args(["replay", str(out), "--period", "10"])

    assert isinstance(trace, TraceCommand) and trace.out == out
    assert isinstance(replay, ReplayCommand) and replay.trace == out


def test_dump_network_and_verbose() -> None:
    command = parse_args(["-v", "dump-network", "--period", "11", "--nodes", "4"])
    assert isinstance(command, DumpNetworkCommand)
    assert command.verbose
    assert command.geometry.number_of_nodes == 4


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["analytic", "--unknown"],
        ["analytic", "--cs", "-1"],
        ["analytic", "--variant", "eq9"],
        ["trace", "--period", "10"],
    ],
)
def test_usage_errors_carry_usage_text(argv: list[str]) -> None:
    with pytest.raises(UsageError) as exc_info:
        parse_args(argv)
    assert exc_info.value.usage.startswith("usage: wsan-sched")


def test_int_list_expands_ranges() -> None:
    assert int_list("1-3,5") == (1, 2, 3, 5)
    assert int_list(" 2, 10 ") == (2, 10)


@pytest.mark.parametrize("text", ["", "a", "5-3", "-1"])
def test_int_list_rejects_malformed(text: str) -> None:
    with pytest.raises(argparse.ArgumentTypeError):
        int_list(text)
