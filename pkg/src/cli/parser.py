"""Разбор аргументов командной строки в объекты Command."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple

from src import __version__
from src.analysis.bounds import FormulaVariant, ResponseLowerBound
from src.cli.commands import (
    AnalyticCommand,
    CheckCommand,
    Command,
    DumpNetworkCommand,
    ExplorerFlags,
    GeometryFlags,
    OutputFormat,
    ParameterFlags,
    ReplayCommand,
    SweepCommand,
    TraceCommand,
)
from src.cli.exceptions import UsageError
from src.model.params import MediumProtocol
from src.search.sweep import Method, Strategy

PROG = "wsan-sched"

# флаг -> поле TaskParams
TASK_FLAGS: Tuple[Tuple[str, str, str], ...] = (
    ("--cs", "sensor_wcet", "sensor task WCET C_S, ms"),
    ("--bcet", "sensor_bcet", "sensor task BCET, ms"),
    ("--cm", "misc_wcet", "misc task WCET C_M, ms"),
    ("--tm", "misc_period", "misc task period T_M, ms"),
    ("--ttdma", "tdma_superframe", "TDMA super-frame T_tdma, ms"),
    ("--n", "buffer_size", "samples per packet N"),
    ("--period", "sensor_period", "sensor period T_S, ms"),
)
CELL_FIELDS = frozenset({"sensor_wcet", "buffer_size", "sensor_period"})

BMAC_FLAGS: Tuple[Tuple[str, str], ...] = (
    ("--t-b1", "t_b1"),
    ("--t-f1", "t_f1"),
    ("--t-b2", "t_b2"),
    ("--t-f2", "t_f2"),
    ("--bmac-k", "k"),
    ("--t-pkt", "t_pkt"),
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser, который поднимает UsageError вместо завершения процесса."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, self.format_usage())


# ------------------------------------------------------------------ types --
def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def int_list(text: str) -> Tuple[int, ...]:
    """Список целых через запятую; элемент ``a-b`` раскрывается в диапазон."""

    values: List[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "-" in chunk:
            start, _, end = chunk.partition("-")
            lo, hi = _non_negative_int(start), _non_negative_int(end)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {chunk!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(_non_negative_int(chunk))
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return tuple(values)


# ----------------------------------------------------------------- groups --
def _add_parameter_flags(parser: argparse.ArgumentParser, *, cell: bool = True) -> None:
    group = parser.add_argument_group("model parameters")
    group.add_argument("--config", type=Path, help="JSON parameter file")
    for flag, name, text in TASK_FLAGS:
        if not cell and name in CELL_FIELDS:
            continue
        group.add_argument(flag, dest=f"task_{name}", type=_non_negative_int, help=text)
    group.add_argument(
        "--tx-times",
        dest="task_packet_tx_times",
        type=int_list,
        help="possible one-packet transmission times, e.g. 5,6,7",
    )
    group.add_argument(
        "--protocol", choices=[p.value for p in MediumProtocol], default=MediumProtocol.TDMA.value
    )
    bmac = parser.add_argument_group("B-MAC sender delay")
    for flag, name in BMAC_FLAGS:
        bmac.add_argument(flag, dest=f"bmac_{name}", type=_non_negative_int)


def _add_geometry_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("network geometry")
    group.add_argument("--nodes", dest="number_of_nodes", type=_non_negative_int)
    group.add_argument(
        "--slot-size", type=_non_negative_int, help="0 divides the super-frame evenly"
    )
    group.add_argument("--slot-offset", type=_non_negative_int)
    group.add_argument("--misc-offset", type=_non_negative_int)
    group.add_argument("--packet-release", choices=["handoff", "completion"])


def _add_explorer_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("state-space exploration")
    group.add_argument("--max-states", type=_non_negative_int)
    group.add_argument(
        "--horizon", type=_non_negative_int, help="model-time bound in ms, 0 = none"
    )
    group.add_argument("--order", choices=["bfs", "dfs", "shuffled"])
    group.add_argument("--seed", type=_non_negative_int)
    group.add_argument(
        "--jobs", type=_non_negative_int, help="worker budget (env WSAN_SCHED_JOBS)"
    )
    group.add_argument(
        "--deadline-inclusive",
        action="store_true",
        default=None,
        help="a message served exactly at its deadline is in time",
    )
    group.add_argument(
        "--wcet-only",
        dest="worst_case_delays",
        action="store_true",
        default=None,
        help="use only worst-case execution times",
    )


def _add_analytic_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--variant", choices=[v.value for v in FormulaVariant], default="eq6")
    parser.add_argument("--strict", action="store_true", help="strict medium-access inequality")


def _subcommand(sub: Any, name: str, text: str) -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = sub.add_parser(name, allow_abbrev=False, help=text)
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=PROG,
        allow_abbrev=False,
        description="WSAN sensor sampling-rate schedulability workbench",
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    analytic = _subcommand(sub, "analytic", "closed-form minimum feasible period")
    _add_parameter_flags(analytic)
    _add_analytic_flags(analytic)
    analytic.add_argument(
        "--lower-bound", choices=[b.value for b in ResponseLowerBound], default="wcet"
    )
    analytic.add_argument("--format", choices=["text", "json"], default="text")

    check = _subcommand(sub, "check", "model-check one configuration")
    _add_parameter_flags(check)
    _add_geometry_flags(check)
    _add_explorer_flags(check)
    check.add_argument("--format", choices=["text", "json"], default="text")
    check.add_argument("--trace-out", type=Path, help="where to write a counterexample")
    check.add_argument(
        "--compare-wcet-only",
        action="store_true",
        help="also run with worst-case execution times only and report both verdicts",
    )

    sweep = _subcommand(sub, "sweep", "minimum periods over a (C_S, N) grid")
    _add_parameter_flags(sweep, cell=False)
    _add_geometry_flags(sweep)
    _add_explorer_flags(sweep)
    _add_analytic_flags(sweep)
    sweep.add_argument("--cs-values", type=int_list, default=(2, 10, 20, 30))
    sweep.add_argument("--n-values", type=int_list, default=tuple(range(1, 11)))
    sweep.add_argument("--method", choices=[m.value for m in Method], default="both")
    sweep.add_argument("--strategy", choices=[s.value for s in Strategy])
    sweep.add_argument("--lo", type=_non_negative_int, help="lowest period to probe, ms")
    sweep.add_argument("--hi", type=_non_negative_int, help="highest period to probe, ms")
    sweep.add_argument("--out", type=Path)
    sweep.add_argument("--format", choices=["csv", "json", "md"], default="md")

    trace = _subcommand(sub, "trace", "explore and write the counterexample trace")
    _add_parameter_flags(trace)
    _add_geometry_flags(trace)
    _add_explorer_flags(trace)
    trace.add_argument("--out", type=Path, required=True)
    trace.add_argument("--format", choices=["text", "json"], default="text")

    replay = _subcommand(sub, "replay", "replay a recorded trace against the model")
    _add_parameter_flags(replay)
    _add_geometry_flags(replay)
    _add_explorer_flags(replay)
    replay.add_argument("trace", type=Path)
    replay.add_argument("--format", choices=["text", "json"], default="text")

    dump = _subcommand(sub, "dump-network", "print the actor network as JSON")
    _add_parameter_flags(dump)
    _add_geometry_flags(dump)
    return parser


# ----------------------------------------------------------------- build --
def _prefixed(namespace: argparse.Namespace, prefix: str) -> Dict[str, Any]:
    return {
        key[len(prefix) :]: value
        for key, value in vars(namespace).items()
        if key.startswith(prefix) and value is not None
    }


def _parameters(namespace: argparse.Namespace) -> ParameterFlags:
    return ParameterFlags(
        config=namespace.config,
        task=_prefixed(namespace, "task_"),
        bmac=_prefixed(namespace, "bmac_"),
    )


def _geometry(namespace: argparse.Namespace) -> GeometryFlags:
    return GeometryFlags(
        number_of_nodes=namespace.number_of_nodes,
        slot_size=namespace.slot_size,
        slot_offset=namespace.slot_offset,
        misc_offset=namespace.misc_offset,
        packet_release=namespace.packet_release,
    )


def _explorer(namespace: argparse.Namespace) -> ExplorerFlags:
    return ExplorerFlags(
        max_states=namespace.max_states,
        max_time_horizon=namespace.horizon,
        frontier_order=namespace.order,
        seed=namespace.seed,
        jobs=namespace.jobs,
        deadline_inclusive=namespace.deadline_inclusive,
        worst_case_delays=namespace.worst_case_delays,
    )


def parse_args(argv: Optional[Sequence[str]] = None) -> Command:
    """Разбирает argv; ошибки разбора поднимаются как UsageError с текстом usage."""

    parser = build_parser()
    namespace = parser.parse_args(argv)
    common: Dict[str, Any] = {
        "params": _parameters(namespace),
        "protocol": MediumProtocol(namespace.protocol),
        "verbose": namespace.verbose,
    }
    if namespace.command != "analytic":
        common["geometry"] = _geometry(namespace)
    fmt = OutputFormat(namespace.format) if "format" in namespace else OutputFormat.TEXT

    if namespace.command == "analytic":
        return AnalyticCommand(
            **common,
            variant=FormulaVariant(namespace.variant),
            strict=namespace.strict,
            lower_bound=ResponseLowerBound(namespace.lower_bound),
            fmt=fmt,
        )
    if namespace.command == "check":
        return CheckCommand(
            **common,
            explorer=_explorer(namespace),
            fmt=fmt,
            trace_out=namespace.trace_out,
            compare_wcet_only=namespace.compare_wcet_only,
        )
    if namespace.command == "sweep":
        if namespace.lo is not None and namespace.hi is not None and namespace.hi < namespace.lo:
            parser.error("--hi must not be below --lo")
        return SweepCommand(
            **common,
            explorer=_explorer(namespace),
            sensor_wcets=namespace.cs_values,
            buffer_sizes=namespace.n_values,
            method=Method(namespace.method),
            strategy=Strategy(namespace.strategy) if namespace.strategy else None,
            period_lo=namespace.lo,
            period_hi=namespace.hi,
            variant=FormulaVariant(namespace.variant),
            strict=namespace.strict,
            out=namespace.out,
            fmt=fmt,
        )
    if namespace.command == "trace":
        return TraceCommand(**common, explorer=_explorer(namespace), out=namespace.out, fmt=fmt)
    if namespace.command == "replay":
        return ReplayCommand(
            **common, explorer=_explorer(namespace), trace=namespace.trace, fmt=fmt
        )
    return DumpNetworkCommand(**common)
