"""Разобранные команды CLI: по одному классу на подкоманду."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from src.analysis.bounds import FormulaVariant, ResponseLowerBound
from src.model.params import MediumProtocol
from src.search.sweep import Method, Strategy


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"
    MARKDOWN = "md"


@dataclass(frozen=True, slots=True)
class ParameterFlags:
    """Параметры модели из флагов и путь к файлу параметров; None - флаг не задан."""

    config: Optional[Path] = None
    task: Dict[str, Any] = field(default_factory=dict)
    bmac: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class GeometryFlags:
    number_of_nodes: Optional[int] = None
    slot_size: Optional[int] = None
    slot_offset: Optional[int] = None
    misc_offset: Optional[int] = None
    packet_release: Optional[str] = None


@dataclass(frozen=True, slots=True)
class ExplorerFlags:
    max_states: Optional[int] = None
    max_time_horizon: Optional[int] = None
    frontier_order: Optional[str] = None
    seed: Optional[int] = None
    jobs: Optional[int] = None
    deadline_inclusive: Optional[bool] = None
    worst_case_delays: Optional[bool] = None


@dataclass(frozen=True, slots=True, kw_only=True)
class ModelCommand:
    params: ParameterFlags = field(default_factory=ParameterFlags)
    protocol: MediumProtocol = MediumProtocol.TDMA
    geometry: GeometryFlags = field(default_factory=GeometryFlags)
    verbose: bool = False


@dataclass(frozen=True, slots=True, kw_only=True)
class AnalyticCommand(ModelCommand):
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT
    strict: bool = False
    lower_bound: ResponseLowerBound = ResponseLowerBound.WCET
    fmt: OutputFormat = OutputFormat.TEXT


@dataclass(frozen=True, slots=True, kw_only=True)
class CheckCommand(ModelCommand):
    explorer: ExplorerFlags = field(default_factory=ExplorerFlags)
    fmt: OutputFormat = OutputFormat.TEXT
    trace_out: Optional[Path] = None
    compare_wcet_only: bool = False


@dataclass(frozen=True, slots=True, kw_only=True)
class SweepCommand(ModelCommand):
    explorer: ExplorerFlags = field(default_factory=ExplorerFlags)
    sensor_wcets: Tuple[int, ...] = (2, 10, 20, 30)
    buffer_sizes: Tuple[int, ...] = tuple(range(1, 11))
    method: Method = Method.BOTH
    strategy: Optional[Strategy] = None
    period_lo: Optional[int] = None
    period_hi: Optional[int] = None
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT
    strict: bool = False
    out: Optional[Path] = None
    fmt: OutputFormat = OutputFormat.MARKDOWN


@dataclass(frozen=True, slots=True, kw_only=True)
class TraceCommand(ModelCommand):
    explorer: ExplorerFlags = field(default_factory=ExplorerFlags)
    out: Path
    fmt: OutputFormat = OutputFormat.TEXT


@dataclass(frozen=True, slots=True, kw_only=True)
class ReplayCommand(ModelCommand):
    explorer: ExplorerFlags = field(default_factory=ExplorerFlags)
    trace: Path
    fmt: OutputFormat = OutputFormat.TEXT


@dataclass(frozen=True, slots=True, kw_only=True)
class DumpNetworkCommand(ModelCommand):
    pass


Command = Union[
    AnalyticCommand,
    CheckCommand,
    SweepCommand,
    TraceCommand,
    ReplayCommand,
    DumpNetworkCommand,
]
