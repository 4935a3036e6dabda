"""Поиск минимального допустимого периода сенсора и прогон сетки (C_S, N).

Каждая ячейка сетки считается независимо: аналитически через
``min_feasible_period`` или проверкой модели перебором периодов. Ячейки
проверки моделей можно распределить по процессам, порядок записей в итоговой
таблице от этого не зависит.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from src import __version__
from src.analysis.bounds import (
    FormulaVariant,
    min_feasible_period,
    min_feasible_period_bmac,
)
from src.analysis.exceptions import AnalysisError, InfeasibleConfigurationError
from src.kernel.exceptions import ExplorationLimitExceeded, KernelError
from src.kernel.explorer import ExplorationLimits, ExplorerOptions, FrontierOrder
from src.kernel.semantics import SemanticsOptions
from src.kernel.verdict import Verdict
from src.model.exceptions import ModelError
from src.model.params import (
    BmacParams,
    MediumProtocol,
    TaskParams,
    max_rate_from_period,
    validate,
)
from src.search.exceptions import InvalidSweepSpec
from src.utils.system_metrics import read_host_info
from src.wsan.exceptions import WsanError
from src.wsan.network import NetworkGeometry, check_schedulability

LOGGER = logging.getLogger(__name__)

PUBLISHED_SENSOR_WCETS: Tuple[int, ...] = (2, 10, 20, 30)
PUBLISHED_BUFFER_SIZES: Tuple[int, ...] = tuple(range(1, 11))


@dataclass(frozen=True, slots=True)
class KnownDeviation:
    """Ячейка, где минимум проверки модели не совпадает с опубликованной таблицей.

    Значения получены для базовой конфигурации: TDMA, геометрия и семантика по
    умолчанию, C_M=10, T_M=120, T_tdma=10.
    """

    sensor_wcet: int
    buffer_size: int
    published_period: int
    model_period: int
    reason: str


_SINGLE_PACKET_RADIO = (
    "with N=1 two packets can become ready inside one foreign TDMA window; the radio "
    "holds a single pending packet, so the second send fails receiverDevice == null "
    "below the model-checking minimum"
)

KNOWN_DEVIATIONS: Tuple[KnownDeviation, ...] = (
    KnownDeviation(10, 1, 11, 20, _SINGLE_PACKET_RADIO),
    KnownDeviation(20, 1, 22, 30, _SINGLE_PACKET_RADIO),
    KnownDeviation(30, 1, 33, 40, _SINGLE_PACKET_RADIO),
)


class Method(str, Enum):
    ANALYTICAL = "analytical"
    MODEL_CHECKING = "model-checking"
    BOTH = "both"

    def expand(self) -> Tuple["Method", ...]:
        if self is Method.BOTH:
            return (Method.ANALYTICAL, Method.MODEL_CHECKING)
        return (self,)


class Strategy(str, Enum):
    LINEAR = "linear"
    BINARY = "binary"


class CellStatus(str, Enum):
    """Исход ячейки; ``ERROR`` - проверка ячейки завершилась ошибкой модели или сети."""

    FOUND = "Schedulable"
    NONE_IN_RANGE = "NoFeasiblePeriod"
    LIMIT_EXCEEDED = "LimitExceeded"
    INFEASIBLE = "Infeasible"
    ERROR = "Error"


_METHOD_ORDER = {Method.ANALYTICAL: 0, Method.MODEL_CHECKING: 1}


@dataclass(frozen=True, slots=True)
class CheckSettings:
    """Настройки проверки модели для одного периода."""

    protocol: MediumProtocol = MediumProtocol.TDMA
    geometry: NetworkGeometry = NetworkGeometry()
    limits: ExplorationLimits = ExplorationLimits()
    order: FrontierOrder = FrontierOrder.BFS
    seed: int = 0
    workers: int = 1
    semantics: SemanticsOptions = SemanticsOptions()

    def explorer_options(self) -> ExplorerOptions:
        return ExplorerOptions(
            order=self.order,
            seed=self.seed,
            workers=self.workers,
            stop_at_first_violation=True,
            semantics=self.semantics,
        )


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Описание сетки: значения C_S и N, фиксированные параметры, метод и диапазон поиска."""

    sensor_wcets: Tuple[int, ...] = PUBLISHED_SENSOR_WCETS
    buffer_sizes: Tuple[int, ...] = PUBLISHED_BUFFER_SIZES
    base: TaskParams = TaskParams()
    bmac: Optional[BmacParams] = None
    method: Method = Method.BOTH
    period_lo: int = 1
    period_hi: int = 200
    strategy: Strategy = Strategy.LINEAR
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT
    strict: bool = False
    check: CheckSettings = field(default_factory=CheckSettings)
    jobs: int = 1

    def __post_init__(self) -> None:
        problems = []
        if not self.sensor_wcets:
            problems.append("sensor_wcets must be nonempty")
        if not self.buffer_sizes:
            problems.append("buffer_sizes must be nonempty")
        if self.period_lo < 1:
            problems.append("period_lo must be ≥ 1")
        if self.period_hi < self.period_lo:
            problems.append("period_hi must be ≥ period_lo")
        if self.jobs < 1:
            problems.append("jobs must be ≥ 1")
        for cs in self.sensor_wcets:
            for n in self.buffer_sizes:
                problems.extend(
                    f"C_S={cs}, N={n}: {problem}" for problem in validate(self.cell_params(cs, n))
                )
        if problems:
            raise InvalidSweepSpec(problems)

    def cell_params(self, sensor_wcet: int, buffer_size: int) -> TaskParams:
        return replace(
            self.base, sensor_wcet=sensor_wcet, buffer_size=buffer_size, sensor_period=None
        )

    def cells(self) -> List[Tuple[int, int, Method]]:
        return [
            (cs, n, method)
            for cs in self.sensor_wcets
            for n in self.buffer_sizes
            for method in self.method.expand()
        ]


@dataclass(slots=True)
class PeriodSearch:
    """Результат поиска по одной ячейке."""

    min_period: Optional[int]
    status: CellStatus
    states: Optional[int] = None
    probes: int = 0
    binding_constraint: Optional[str] = None
    frontier_checked: Optional[bool] = None


@dataclass(slots=True)
class CellResult:
    """Запись таблицы: ячейка (C_S, N) для одного метода."""

    sensor_wcet: int
    buffer_size: int
    method: Method
    min_period: Optional[int]
    status: CellStatus
    states: Optional[int] = None
    probes: int = 0
    binding_constraint: Optional[str] = None
    frontier_checked: Optional[bool] = None
    error: Optional[str] = None
    # параметры ячейки; sensor_period - найденный минимум, если он есть
    params: Optional[TaskParams] = None

    @property
    def max_rate(self) -> Optional[int]:
        return None if self.min_period is None else max_rate_from_period(self.min_period)

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.sensor_wcet, self.buffer_size, _METHOD_ORDER[self.method])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cs": self.sensor_wcet,
            "n": self.buffer_size,
            "method": self.method.value,
            "min_period_ms": self.min_period,
            "max_rate_hz": self.max_rate,
            "states": self.states,
            "verdict": self.status.value,
            "probes": self.probes,
            "binding_constraint": self.binding_constraint,
            "frontier_checked": self.frontier_checked,
            "error": self.error,
            "params": None if self.params is None else self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CellResult":
        period = data.get("min_period_ms")
        states = data.get("states")
        params = data.get("params")
        return cls(
            sensor_wcet=int(data["cs"]),
            buffer_size=int(data["n"]),
            method=Method(data["method"]),
            min_period=int(period) if period is not None else None,
            status=CellStatus(data["verdict"]),
            states=int(states) if states is not None else None,
            probes=int(data.get("probes", 0)),
            binding_constraint=data.get("binding_constraint"),
            frontier_checked=data.get("frontier_checked"),
            error=data.get("error"),
            params=TaskParams.from_dict(params) if params is not None else None,
        )


@dataclass(slots=True)
class SweepTable:
    cells: List[CellResult]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def cell(self, sensor_wcet: int, buffer_size: int, method: Method) -> Optional[CellResult]:
        for record in self.cells:
            if (record.sensor_wcet, record.buffer_size, record.method) == (
                sensor_wcet,
                buffer_size,
                method,
            ):
                return record
        return None

    def for_method(self, method: Method) -> List[CellResult]:
        return [record for record in self.cells if record.method is method]

    @property
    def sensor_wcets(self) -> List[int]:
        return sorted({record.sensor_wcet for record in self.cells})

    @property
    def buffer_sizes(self) -> List[int]:
        return sorted({record.buffer_size for record in self.cells})

    @property
    def methods(self) -> List[Method]:
        present = {record.method for record in self.cells}
        return sorted(present, key=lambda method: _METHOD_ORDER[method])

    def to_dict(self) -> Dict[str, Any]:
        return {"metadata": self.metadata, "cells": [record.to_dict() for record in self.cells]}


# ------------------------------------------------------------------ search --
def analytical_min_period(
    params: TaskParams,
    *,
    protocol: MediumProtocol = MediumProtocol.TDMA,
    bmac: Optional[BmacParams] = None,
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT,
    strict: bool = False,
) -> PeriodSearch:
    try:
        if protocol is MediumProtocol.BMAC:
            bound = min_feasible_period_bmac(params, bmac or BmacParams(), variant, strict=strict)
        else:
            bound = min_feasible_period(params, variant, strict=strict)
    except InfeasibleConfigurationError:
        return PeriodSearch(None, CellStatus.INFEASIBLE)
    return PeriodSearch(
        bound.min_period,
        CellStatus.FOUND,
        binding_constraint=bound.binding_constraint.value,
    )


class _Prober:
    """Кэширует вердикты по периодам, чтобы каждый период проверялся один раз."""

    def __init__(self, check: Callable[[int], Verdict]) -> None:
        self._check = check
        self._cache: Dict[int, Verdict] = {}

    @property
    def probes(self) -> int:
        return len(self._cache)

    def verdict(self, period: int) -> Verdict:
        if period not in self._cache:
            self._cache[period] = self._check(period)
        return self._cache[period]

    def passes(self, period: int) -> bool:
        return self.verdict(period).schedulable


def _linear(prober: _Prober, lo: int, hi: int) -> Optional[int]:
    for period in range(lo, hi + 1):
        if prober.passes(period):
            return period
    return None


def _binary(prober: _Prober, lo: int, hi: int) -> Optional[int]:
    if not prober.passes(hi):
        return None
    left, right = lo, hi
    while left < right:
        middle = (left + right) // 2
        if prober.passes(middle):
            right = middle
        else:
            left = middle + 1
    return left


def model_checking_min_period(
    params: TaskParams,
    *,
    lo: int = 1,
    hi: int = 200,
    strategy: Strategy = Strategy.LINEAR,
    settings: CheckSettings = CheckSettings(),
) -> PeriodSearch:
    """Наименьший T_S в [lo, hi] с вердиктом Schedulable.

    Бинарный поиск после нахождения кандидата T проверяет, что T-1 не проходит, а
    T+1 проходит; если граница не монотонна, выполняется линейный просмотр.
    ExplorationLimitExceeded пробрасывается вызывающему.
    """

    options = settings.explorer_options()

    def check(period: int) -> Verdict:
        verdict = check_schedulability(
            params.with_period(period),
            settings.protocol,
            settings.geometry,
            limits=settings.limits,
            options=options,
        )
        LOGGER.debug(
            "T_S=%d -> %s (%d states)", period, verdict.kind.value, verdict.states_explored
        )
        return verdict

    prober = _Prober(check)
    frontier_checked: Optional[bool] = None
    if strategy is Strategy.BINARY:
        found = _binary(prober, lo, hi)
        if found is not None:
            below_fails = found == lo or not prober.passes(found - 1)
            above_passes = found == hi or prober.passes(found + 1)
            frontier_checked = below_fails and above_passes
            if not frontier_checked:
                LOGGER.warning(
                    "Schedulability is not monotone around T_S=%d (C_S=%d, N=%d); "
                    "falling back to a linear scan",
                    found,
                    params.sensor_wcet,
                    params.buffer_size,
                )
                found = _linear(prober, lo, hi)
    else:
        found = _linear(prober, lo, hi)

    if found is None:
        return PeriodSearch(None, CellStatus.NONE_IN_RANGE, probes=prober.probes)
    return PeriodSearch(
        found,
        CellStatus.FOUND,
        states=prober.verdict(found).states_explored,
        probes=prober.probes,
        frontier_checked=frontier_checked,
    )


def find_min_period(
    params: TaskParams,
    method: Method,
    strategy: Strategy = Strategy.LINEAR,
    period_range: Tuple[int, int] = (1, 200),
    *,
    settings: CheckSettings = CheckSettings(),
    bmac: Optional[BmacParams] = None,
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT,
    strict: bool = False,
) -> PeriodSearch:
    """Минимальный допустимый период ячейки выбранным методом."""

    if method is Method.ANALYTICAL:
        return analytical_min_period(
            params, protocol=settings.protocol, bmac=bmac, variant=variant, strict=strict
        )
    if method is Method.MODEL_CHECKING:
        lo, hi = period_range
        return model_checking_min_period(params, lo=lo, hi=hi, strategy=strategy, settings=settings)
    raise ValueError("find_min_period expects a single method, not BOTH")


# ------------------------------------------------------------------- sweep --
def _evaluate_cell(
    spec: SweepSpec, cell: Tuple[int, int, Method], settings: CheckSettings
) -> CellResult:
    cs, n, method = cell
    params = spec.cell_params(cs, n)
    started = time.perf_counter()
    try:
        search = find_min_period(
            params,
            method,
            spec.strategy,
            (spec.period_lo, spec.period_hi),
            settings=settings,
            bmac=spec.bmac,
            variant=spec.variant,
            strict=spec.strict,
        )
    except ExplorationLimitExceeded as exc:
        return CellResult(
            cs, n, method, None, CellStatus.LIMIT_EXCEEDED, error=exc.message, params=params
        )
    except (WsanError, ModelError, KernelError, AnalysisError) as exc:
        LOGGER.warning("Cell C_S=%d N=%d %s failed: %s", cs, n, method.value, exc)
        error = f"{type(exc).__name__}: {exc}"
        return CellResult(cs, n, method, None, CellStatus.ERROR, error=error, params=params)
    LOGGER.info(
        "Cell C_S=%d N=%d %s -> %s (%s) in %.2f s",
        cs,
        n,
        method.value,
        search.min_period,
        search.status.value,
        time.perf_counter() - started,
    )
    return CellResult(
        cs,
        n,
        method,
        search.min_period,
        search.status,
        states=search.states,
        probes=search.probes,
        binding_constraint=search.binding_constraint,
        frontier_checked=search.frontier_checked,
        params=params if search.min_period is None else params.with_period(search.min_period),
    )


def _evaluate_batch(
    spec: SweepSpec, cells: List[Tuple[int, int, Method]], settings: CheckSettings
) -> List[CellResult]:
    return [_evaluate_cell(spec, cell, settings) for cell in cells]


def _split_budget(jobs: int, cell_count: int) -> Tuple[int, int]:
    """Делит общий бюджет воркеров на процессы по ячейкам и потоки внутри ячейки."""

    processes = max(1, min(jobs, cell_count))
    return processes, max(1, jobs // processes)


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Считает все ячейки сетки; сбой ячейки отмечается в записи и не прерывает прогон."""

    started = time.perf_counter()
    cells = spec.cells()
    analytical = [cell for cell in cells if cell[2] is Method.ANALYTICAL]
    checked = [cell for cell in cells if cell[2] is Method.MODEL_CHECKING]
    processes, per_cell_workers = _split_budget(spec.jobs, len(checked))
    settings = replace(spec.check, workers=max(spec.check.workers, per_cell_workers))

    results = _evaluate_batch(spec, analytical, spec.check)
    if processes > 1:
        LOGGER.info("Running %d model-checking cells on %d processes", len(checked), processes)
        context = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=processes, mp_context=context) as pool:
            futures = [pool.submit(_evaluate_cell, spec, cell, settings) for cell in checked]
            results.extend(future.result() for future in futures)
    else:
        results.extend(_evaluate_batch(spec, checked, settings))

    results.sort(key=CellResult.sort_key)
    for deviation in published_deviations(spec, settings):
        LOGGER.warning(
            "C_S=%d N=%d: model-checking minimum is documented as %d ms (published %d ms)",
            deviation["cs"],
            deviation["n"],
            deviation["model_period_ms"],
            deviation["published_period_ms"],
        )
    metadata = sweep_metadata(spec, settings, time.perf_counter() - started)
    return SweepTable(results, metadata)


def _baseline_setup(spec: SweepSpec, settings: CheckSettings) -> bool:
    reference = replace(
        spec.base,
        sensor_period=None,
        sensor_wcet=TaskParams().sensor_wcet,
        buffer_size=TaskParams().buffer_size,
    )
    return (
        settings.protocol is MediumProtocol.TDMA
        and settings.geometry == NetworkGeometry()
        and settings.semantics == SemanticsOptions()
        and reference == TaskParams()
    )


def published_deviations(spec: SweepSpec, settings: CheckSettings) -> List[Dict[str, Any]]:
    """Известные расхождения с опубликованной таблицей для ячеек этого прогона.

    Каждая запись несёт полный набор параметров ячейки при опубликованном периоде,
    чтобы расхождение можно было воспроизвести командой ``check``.
    """

    if Method.MODEL_CHECKING not in spec.method.expand() or not _baseline_setup(spec, settings):
        return []
    return [
        {
            "cs": deviation.sensor_wcet,
            "n": deviation.buffer_size,
            "published_period_ms": deviation.published_period,
            "model_period_ms": deviation.model_period,
            "params": spec.cell_params(deviation.sensor_wcet, deviation.buffer_size)
            .with_period(deviation.published_period)
            .to_dict(),
            "protocol": settings.protocol.value,
            "reason": deviation.reason,
        }
        for deviation in KNOWN_DEVIATIONS
        if deviation.sensor_wcet in spec.sensor_wcets
        and deviation.buffer_size in spec.buffer_sizes
    ]


def sweep_metadata(spec: SweepSpec, settings: CheckSettings, wall_time: float) -> Dict[str, Any]:
    """Параметры прогона, версия инструмента, геометрия сети и сведения о машине."""

    return {
        "tool": "wsan-sched",
        "version": __version__,
        "base_params": spec.base.to_dict(),
        "bmac": (spec.bmac or BmacParams()).to_dict()
        if settings.protocol is MediumProtocol.BMAC
        else None,
        "protocol": settings.protocol.value,
        "geometry": settings.geometry.resolve(spec.base.tdma_superframe).to_dict(),
        "method": spec.method.value,
        "strategy": spec.strategy.value,
        "period_range": [spec.period_lo, spec.period_hi],
        "formula_variant": spec.variant.value,
        "strict": spec.strict,
        "max_states": settings.limits.max_states,
        "frontier_order": settings.order.value,
        "deadline_inclusive": settings.semantics.deadline_inclusive,
        "worst_case_delays": settings.semantics.worst_case_delays,
        "jobs": spec.jobs,
        "wall_time_s": round(wall_time, 3),
        "published_deviations": published_deviations(spec, settings),
        "host": read_host_info().to_dict(),
    }


def iter_periods(table: SweepTable, method: Method) -> Iterable[Tuple[int, int, Optional[int]]]:
    for record in table.for_method(method):
        yield record.sensor_wcet, record.buffer_size, record.min_period
