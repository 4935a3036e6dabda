"""Выгрузка таблиц sweep в CSV, JSON и markdown."""

from __future__ import annotations

import csv
import io
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError

from src.model.params import max_rate_from_period
from src.search.exceptions import TableFormatError
from src.search.sweep import CellResult, CellStatus, Method, SweepTable

LOGGER = logging.getLogger(__name__)

CSV_HEADER = ("cs", "n", "method", "min_period_ms", "max_rate_hz", "states", "verdict")

_METHOD_TITLES = {Method.ANALYTICAL: "Analytical", Method.MODEL_CHECKING: "Model Checking"}
_MISSING_MARKS = {CellStatus.LIMIT_EXCEEDED: "limit", CellStatus.ERROR: "error"}


class TableFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "md"


class _CellSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cs: int
    n: int
    method: Method
    min_period_ms: Optional[int] = None
    max_rate_hz: Optional[int] = None
    states: Optional[int] = None
    verdict: CellStatus
    probes: int = 0
    binding_constraint: Optional[str] = None
    frontier_checked: Optional[bool] = None
    error: Optional[str] = None
    params: Optional[Dict[str, Any]] = None


class _TableSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    metadata: Dict[str, Any]
    cells: List[_CellSchema]


# ------------------------------------------------------------------ csv --
def to_csv(table: SweepTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in table.cells:
        row = record.to_dict()
        writer.writerow(["" if row[key] is None else row[key] for key in CSV_HEADER])
    return buffer.getvalue()


# ----------------------------------------------------------------- json --
def to_json(table: SweepTable) -> str:
    return json.dumps(table.to_dict(), indent=2, ensure_ascii=False)


def from_json(text: str) -> SweepTable:
    """Разбирает JSON-таблицу и проверяет согласованность колонки частот."""

    try:
        document = _TableSchema.model_validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc}") from exc
    except ValidationError as exc:
        raise TableFormatError(str(exc.errors()[0]["msg"])) from exc

    cells = []
    for cell in document.cells:
        expected = None if cell.min_period_ms is None else max_rate_from_period(cell.min_period_ms)
        if cell.max_rate_hz != expected:
            raise TableFormatError(
                f"max_rate_hz {cell.max_rate_hz} does not match period {cell.min_period_ms} "
                f"for C_S={cell.cs} N={cell.n}"
            )
        cells.append(CellResult.from_dict(cell.model_dump(mode="json")))
    return SweepTable(cells, document.metadata)


def read_table(path: Path) -> SweepTable:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(f"cannot read {path}: {exc}") from exc
    return from_json(text)


# ------------------------------------------------------------- markdown --
def _period_cell(record: Optional[CellResult]) -> str:
    if record is None:
        return ""
    if record.min_period is None:
        return _MISSING_MARKS.get(record.status, "-")
    return str(record.min_period)


def _rate_cell(record: Optional[CellResult]) -> str:
    if record is None:
        return ""
    rate = record.max_rate
    if rate is None:
        return _MISSING_MARKS.get(record.status, "-")
    return str(rate)


def _markdown_grid(
    table: SweepTable, title: str, render: Callable[[Optional[CellResult]], str]
) -> List[str]:
    columns = [(method, cs) for method in table.methods for cs in table.sensor_wcets]
    header = ["N"] + [f"{_METHOD_TITLES[method]} C_S={cs}" for method, cs in columns]
    lines = [
        f"### {title}",
        "",
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---:" for _ in header) + "|",
    ]
    for n in table.buffer_sizes:
        values = [str(n)] + [render(table.cell(cs, n, method)) for method, cs in columns]
        lines.append("| " + " | ".join(values) + " |")
    return lines


def to_markdown(table: SweepTable) -> str:
    """Две таблицы в раскладке публикации: периоды (мс) и частоты (Гц), строки по N."""

    lines = _markdown_grid(table, "Minimum feasible sampling period (ms)", _period_cell)
    lines.append("")
    lines.extend(_markdown_grid(table, "Maximum sampling rate (samples/s)", _rate_cell))
    return "\n".join(lines) + "\n"


_RENDERERS: Dict[TableFormat, Callable[[SweepTable], str]] = {
    TableFormat.CSV: to_csv,
    TableFormat.JSON: to_json,
    TableFormat.MARKDOWN: to_markdown,
}


def render_table(table: SweepTable, fmt: TableFormat) -> str:
    return _RENDERERS[fmt](table)


def write_table(table: SweepTable, path: Path, fmt: TableFormat) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_table(table, fmt), encoding="utf-8")
    LOGGER.info("Wrote %s table with %d cells to %s", fmt.value, len(table.cells), path)
    return path
