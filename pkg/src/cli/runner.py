"""Исполнение команд CLI и отображение исходов в коды выхода.

0 - анализ завершён и (для проверки) Schedulable, 1 - найдено нарушение,
2 - ошибка использования или параметров, 3 - исчерпан лимит исследования.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Set, TextIO, Tuple

from src.analysis.bounds import min_feasible_period, min_feasible_period_bmac, utilization
from src.analysis.exceptions import AnalysisError, InfeasibleConfigurationError
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
from src.cli.exceptions import CliError, UsageError
from src.kernel.exceptions import ExplorationLimitExceeded, KernelError, ReplayDivergence
from src.kernel.explorer import ExplorationLimits, ExplorerOptions, FrontierOrder
from src.kernel.replay import replay
from src.kernel.semantics import SemanticsOptions
from src.kernel.trace import read_trace, write_trace
from src.kernel.verdict import Verdict, VerdictKind, write_verdict_summary
from src.model.exceptions import ModelError
from src.model.loader import ParameterSet, load_parameter_file
from src.model.params import (
    BMAC_FIELDS,
    TASK_FIELDS,
    BmacParams,
    MediumProtocol,
    TaskParams,
    max_rate_from_period,
    validate,
    validate_bmac,
)
from src.search.dominance import dominance_report
from src.search.exceptions import SearchError
from src.search.export import TableFormat, render_table, write_table
from src.search.sweep import CellStatus, CheckSettings, Method, Strategy, SweepSpec, run_sweep
from src.settings.exceptions import SettingsError
from src.settings.observers import FlagOverrideObserver
from src.settings.registry import SettingsRegistry
from src.utils.paths import traces_dir
from src.wsan.actors import PacketRelease
from src.wsan.exceptions import WsanError
from src.wsan.network import NetworkGeometry, build_network, check_schedulability

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

JOBS_ENV = "WSAN_SCHED_JOBS"


def exit_code_for(kind: VerdictKind) -> int:
    return EXIT_OK if kind is VerdictKind.SCHEDULABLE else EXIT_VIOLATION


def verdict_summary_path(trace_path: Path) -> Path:
    """Путь к сводке вердикта рядом с файлом трассы: run.jsonl -> run.verdict.json."""

    stem = trace_path.name.removesuffix(".jsonl")
    return trace_path.with_name(f"{stem}.verdict.json")


class CommandRunner:
    """Выполняет разобранную команду поверх реестра настроек и рабочего каталога."""

    def __init__(
        self,
        registry: SettingsRegistry,
        home: Path,
        *,
        stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None,
        environ: Optional[Mapping[str, str]] = None,
    ) -> None:
        self._registry = registry
        self._home = home
        self._stdout = stdout
        self._stderr = stderr
        self._environ = os.environ if environ is None else environ
        self._logger = logging.getLogger(__name__)
        self._observer: Optional[FlagOverrideObserver] = None

    # ------------------------------------------------------------------- API
    def run(self, command: Command) -> int:
        handlers: Dict[type, Callable[[Any], int]] = {
            AnalyticCommand: self._analytic,
            CheckCommand: self._check,
            SweepCommand: self._sweep,
            TraceCommand: self._trace,
            ReplayCommand: self._replay,
            DumpNetworkCommand: self._dump_network,
        }
        self._observer = FlagOverrideObserver(self.stderr, watched=self._configured_keys())
        self._registry.register_observer(self._observer)
        try:
            return handlers[type(command)](command)
        except ExplorationLimitExceeded as exc:
            self._error(exc.message)
            return EXIT_LIMIT
        except ReplayDivergence as exc:
            self._error(exc.message)
            return EXIT_VIOLATION
        except UsageError as exc:
            if exc.usage:
                print(exc.usage.rstrip(), file=self.stderr)
            self._error(exc.reason)
            return EXIT_USAGE
        except (
            CliError, ModelError, SettingsError, WsanError, SearchError, KernelError, AnalysisError
        ) as exc:
            self._error(exc.message)
            return EXIT_USAGE
        finally:
            self._registry.unregister_observer(self._observer)

    @property
    def stdout(self) -> TextIO:
        return self._stdout or sys.stdout

    @property
    def stderr(self) -> TextIO:
        return self._stderr or sys.stderr

    # ------------------------------------------------------------- commands
    def _analytic(self, command: AnalyticCommand) -> int:
        params, bmac = self._parameters(command.params)
        try:
            if command.protocol is MediumProtocol.BMAC:
                bound = min_feasible_period_bmac(
                    params,
                    bmac,
                    command.variant,
                    strict=command.strict,
                    lower_bound=command.lower_bound,
                )
            else:
                bound = min_feasible_period(
                    params, command.variant, strict=command.strict, lower_bound=command.lower_bound
                )
        except InfeasibleConfigurationError as exc:
            self._error(exc.message)
            return EXIT_VIOLATION

        rate = max_rate_from_period(bound.min_period)
        load = utilization(params.with_period(bound.min_period))
        payload = {
            **bound.to_dict(),
            "max_rate_hz": rate,
            "utilization": round(load, 4),
            "protocol": command.protocol.value,
            "params": params.to_dict(),
        }
        if command.fmt is OutputFormat.JSON:
            self._emit_json(payload)
        else:
            self._print(
                f"{bound.min_period} ms ({rate} samples/s), "
                f"binding {bound.binding_constraint.value}, utilization {load:.3f}"
            )
        return EXIT_OK

    def _check(self, command: CheckCommand) -> int:
        params, _ = self._parameters(command.params)
        period = params.require_period()
        geometry = self._geometry(command.geometry)
        limits, options = self._exploration(command.explorer)
        options = replace(options, stop_at_first_violation=True)

        verdict = check_schedulability(
            params, command.protocol, geometry, limits=limits, options=options
        )
        payload: Dict[str, Any] = {
            "verdict": verdict.summary(),
            "protocol": command.protocol.value,
            "params": params.to_dict(),
            "geometry": geometry.resolve(params.tdma_superframe).to_dict(),
        }
        trace_path: Optional[Path] = None
        if not verdict.schedulable:
            default_name = (
                f"check-{command.protocol.value}-ts{period}"
                f"-cs{params.sensor_wcet}-n{params.buffer_size}.jsonl"
            )
            trace_path = command.trace_out or traces_dir(self._home) / default_name
            self._write_trace(trace_path, verdict)
            payload["trace"] = str(trace_path)

        compared: Optional[Verdict] = None
        if command.compare_wcet_only:
            worst_case = replace(
                options, semantics=replace(options.semantics, worst_case_delays=True)
            )
            compared = check_schedulability(
                params, command.protocol, geometry, limits=limits, options=worst_case
            )
            payload["wcet_only"] = compared.summary()
            if compared.kind is not verdict.kind:
                self._logger.warning(
                    "Worst-case-only delays give %s while the full delay range gives %s",
                    compared.kind.value,
                    verdict.kind.value,
                )

        if command.fmt is OutputFormat.JSON:
            self._emit_json(payload)
        else:
            self._print_verdict(verdict)
            if compared is not None:
                self._print(f"wcet-only: {compared.kind.value} ({compared.states_explored} states)")
            if trace_path is not None:
                self._print(f"trace: {trace_path}")
        return exit_code_for(verdict.kind)

    def _sweep(self, command: SweepCommand) -> int:
        params, bmac = self._parameters(command.params)
        geometry = self._geometry(command.geometry)
        limits, options = self._exploration(command.explorer)
        self._registry.apply_overrides(
            "search",
            {
                "period_lo": command.period_lo,
                "period_hi": command.period_hi,
                "strategy": command.strategy.value if command.strategy else None,
            },
        )
        search = self._registry.get_group("search")

        spec = SweepSpec(
            sensor_wcets=command.sensor_wcets,
            buffer_sizes=command.buffer_sizes,
            base=params,
            bmac=bmac if command.protocol is MediumProtocol.BMAC else None,
            method=command.method,
            period_lo=search.get("period_lo"),
            period_hi=search.get("period_hi"),
            strategy=Strategy(search.get("strategy")),
            variant=command.variant,
            strict=command.strict,
            check=CheckSettings(
                protocol=command.protocol,
                geometry=geometry,
                limits=limits,
                order=options.order,
                seed=options.seed,
                semantics=options.semantics,
            ),
            jobs=options.workers,
        )
        table = run_sweep(spec)

        code = EXIT_OK
        if {Method.ANALYTICAL, Method.MODEL_CHECKING} <= set(table.methods):
            report = dominance_report(table)
            table.metadata["dominance"] = report.to_dict()
            if not report.holds:
                code = EXIT_VIOLATION
        statuses = {record.status for record in table.cells}
        if code == EXIT_OK and CellStatus.ERROR in statuses:
            code = EXIT_USAGE
        elif code == EXIT_OK and CellStatus.LIMIT_EXCEEDED in statuses:
            code = EXIT_LIMIT

        fmt = TableFormat(command.fmt.value)
        if command.out is not None:
            self._print(str(write_table(table, command.out, fmt)))
        else:
            self.stdout.write(render_table(table, fmt))
        return code

    def _trace(self, command: TraceCommand) -> int:
        params, _ = self._parameters(command.params)
        params.require_period()
        geometry = self._geometry(command.geometry)
        limits, options = self._exploration(command.explorer)

        verdict = check_schedulability(
            params, command.protocol, geometry, limits=limits, options=options
        )
        self._write_trace(command.out, verdict)
        if command.fmt is OutputFormat.JSON:
            self._emit_json({"verdict": verdict.summary(), "trace": str(command.out)})
        else:
            self._print_verdict(verdict)
            self._print(f"trace: {command.out}")
        return exit_code_for(verdict.kind)

    def _replay(self, command: ReplayCommand) -> int:
        params, _ = self._parameters(command.params)
        geometry = self._geometry(command.geometry)
        _, options = self._exploration(command.explorer)
        network, initial = build_network(params, command.protocol, geometry)

        events = read_trace(command.trace)
        reproduced = replay(network.model, events, initial=initial, options=options.semantics)
        if command.fmt is OutputFormat.JSON:
            self._emit_json(
                {"trace": str(command.trace), "events": len(events), "reproduced": reproduced}
            )
        else:
            status = "reproduced" if reproduced else "not reproduced"
            self._print(f"{status}: {len(events)} events from {command.trace}")
        return EXIT_OK if reproduced else EXIT_VIOLATION

    def _dump_network(self, command: DumpNetworkCommand) -> int:
        params, bmac = self._parameters(command.params)
        geometry = self._geometry(command.geometry)
        network, _ = build_network(
            params,
            command.protocol,
            geometry,
            bmac=bmac if command.protocol is MediumProtocol.BMAC else None,
        )
        self._emit_json(network.describe())
        return EXIT_OK

    # -------------------------------------------------------------- helpers
    def _configured_keys(self) -> Set[str]:
        """Ключи, чьи значения пришли из config.json или файла параметров."""

        keys = {f"params.{name}" for name in TASK_FIELDS + BMAC_FIELDS}
        for group_name in ("explorer", "search", "network"):
            group = self._registry.get_group(group_name)
            for key in group.keys():
                if group.get(key) != group.get_default(key):
                    keys.add(f"{group_name}.{key}")
        return keys

    def _parameters(self, flags: ParameterFlags) -> Tuple[TaskParams, BmacParams]:
        """Файл параметров, поверх него флаги; конфликт сообщается наблюдателю."""

        loaded = load_parameter_file(flags.config) if flags.config else ParameterSet()
        task = loaded.task.to_dict()
        bmac = loaded.bmac.to_dict()
        for target, values in ((task, flags.task), (bmac, flags.bmac)):
            for key, value in values.items():
                value = list(value) if isinstance(value, tuple) else value
                if key in loaded.provided and self._observer is not None:
                    self._observer.on_setting_changed("params", key, loaded.provided[key], value)
                target[key] = value

        params = TaskParams.from_dict(task)
        bmac_params = BmacParams.from_dict(bmac)
        problems = validate(params) + validate_bmac(bmac_params)
        if problems:
            raise UsageError("invalid parameters: " + "; ".join(problems))
        return params, bmac_params

    def _geometry(self, flags: GeometryFlags) -> NetworkGeometry:
        self._registry.apply_overrides(
            "network",
            {
                "number_of_nodes": flags.number_of_nodes,
                "slot_size_ms": flags.slot_size,
                "slot_offset_ms": flags.slot_offset,
                "misc_offset_ms": flags.misc_offset,
                "packet_release": flags.packet_release,
            },
        )
        network = self._registry.get_group("network")
        return NetworkGeometry(
            number_of_nodes=network.get("number_of_nodes"),
            slot_size=network.get("slot_size_ms") or None,
            slot_offset=network.get("slot_offset_ms"),
            misc_offset=network.get("misc_offset_ms"),
            packet_release=PacketRelease(network.get("packet_release")),
        )

    def _jobs(self, flag: Optional[int]) -> int:
        value = flag
        if value is None and self._environ.get(JOBS_ENV):
            raw = self._environ[JOBS_ENV]
            try:
                value = int(raw)
            except ValueError:
                raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
        self._registry.apply_overrides("search", {"jobs": value})
        jobs: int = self._registry.get_value("search", "jobs")
        return jobs

    def _exploration(self, flags: ExplorerFlags) -> Tuple[ExplorationLimits, ExplorerOptions]:
        self._registry.apply_overrides(
            "explorer",
            {
                "max_states": flags.max_states,
                "max_time_horizon_ms": flags.max_time_horizon,
                "frontier_order": flags.frontier_order,
                "seed": flags.seed,
                "deadline_inclusive": flags.deadline_inclusive,
                "worst_case_delays": flags.worst_case_delays,
            },
        )
        explorer = self._registry.get_group("explorer")
        limits = ExplorationLimits(
            max_states=explorer.get("max_states"),
            max_time_horizon=explorer.get("max_time_horizon_ms") or None,
        )
        options = ExplorerOptions(
            order=FrontierOrder(explorer.get("frontier_order")),
            seed=explorer.get("seed"),
            workers=self._jobs(flags.jobs),
            progress_every=explorer.get("progress_every"),
            semantics=SemanticsOptions(
                deadline_inclusive=explorer.get("deadline_inclusive"),
                worst_case_delays=explorer.get("worst_case_delays"),
            ),
        )
        return limits, options

    def _write_trace(self, path: Path, verdict: Verdict) -> None:
        write_trace(path, verdict.trace)
        write_verdict_summary(verdict_summary_path(path), verdict)

    def _print_verdict(self, verdict: Verdict) -> None:
        self._print(
            f"{verdict.kind.value}: {verdict.states_explored} states, "
            f"peak frontier {verdict.peak_frontier}, {verdict.wall_time_ms} ms"
        )
        requirement = verdict.kind.requirement
        if requirement is not None:
            self._print(f"violated {requirement.value}: {requirement.description}")
        if verdict.trace:
            self._print(f"last event: {verdict.trace[-1].describe()}")

    def _print(self, text: str) -> None:
        print(text, file=self.stdout)

    def _emit_json(self, payload: Dict[str, Any]) -> None:
        print(json.dumps(payload, indent=2, ensure_ascii=False), file=self.stdout)

    def _error(self, message: str) -> None:
        print(f"error: {message}", file=self.stderr)
