"""Поиск минимальных периодов, прогоны по сетке и сравнение методов."""

from src.search.dominance import DominanceReport, DominanceRow, dominance_report
from src.search.exceptions import (
    DominanceViolation,
    InvalidSweepSpec,
    SearchError,
    TableFormatError,
)
from src.search.export import (
    CSV_HEADER,
    TableFormat,
    from_json,
    read_table,
    render_table,
    to_csv,
    to_json,
    to_markdown,
    write_table,
)
from src.search.sweep import (
    KNOWN_DEVIATIONS,
    CellResult,
    CellStatus,
    CheckSettings,
    KnownDeviation,
    Method,
    PeriodSearch,
    Strategy,
    SweepSpec,
    SweepTable,
    find_min_period,
    published_deviations,
    run_sweep,
)

__all__ = [
    "CSV_HEADER",
    "CellResult",
    "CellStatus",
    "CheckSettings",
    "DominanceReport",
    "DominanceRow",
    "DominanceViolation",
    "InvalidSweepSpec",
    "KNOWN_DEVIATIONS",
    "KnownDeviation",
    "Method",
    "PeriodSearch",
    "SearchError",
    "Strategy",
    "SweepSpec",
    "SweepTable",
    "TableFormat",
    "TableFormatError",
    "dominance_report",
    "find_min_period",
    "from_json",
    "published_deviations",
    "read_table",
    "render_table",
    "run_sweep",
    "to_csv",
    "to_json",
    "to_markdown",
    "write_table",
]
