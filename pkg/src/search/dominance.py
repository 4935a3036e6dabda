"""Сравнение минимальных периодов: проверка моделей не должна уступать аналитике."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from src.search.exceptions import DominanceViolation
from src.search.sweep import Method, SweepTable

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DominanceRow:
    sensor_wcet: int
    buffer_size: int
    analytical: Optional[int]
    model_checking: Optional[int]

    @property
    def compared(self) -> bool:
        return self.analytical is not None and self.model_checking is not None

    @property
    def gap(self) -> Optional[int]:
        if self.analytical is None or self.model_checking is None:
            return None
        return self.analytical - self.model_checking

    @property
    def holds(self) -> Optional[bool]:
        gap = self.gap
        return None if gap is None else gap >= 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cs": self.sensor_wcet,
            "n": self.buffer_size,
            "analytical": self.analytical,
            "model_checking": self.model_checking,
            "gap": self.gap,
            "holds": self.holds,
        }


@dataclass(frozen=True, slots=True)
class DominanceReport:
    rows: Tuple[DominanceRow, ...]

    @property
    def violations(self) -> List[DominanceRow]:
        return [row for row in self.rows if row.holds is False]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def compared_cells(self) -> int:
        return sum(1 for row in self.rows if row.compared)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "compared_cells": self.compared_cells,
            "rows": [row.to_dict() for row in self.rows],
        }


def dominance_report(
    analytical: SweepTable,
    model_checking: Optional[SweepTable] = None,
    *,
    strict: bool = False,
) -> DominanceReport:
    """Для каждой ячейки сравнивает периоды двух методов и считает разрыв.

    Обе колонки могут лежать в одной таблице (метод ``both``), тогда второй
    аргумент не нужен. Ячейки, где один из методов не дал периода, попадают в
    отчёт без сравнения. Нарушение логируется на уровне ERROR; при ``strict``
    дополнительно поднимается DominanceViolation.
    """

    checked = model_checking if model_checking is not None else analytical
    analytic_periods = {
        (record.sensor_wcet, record.buffer_size): record.min_period
        for record in analytical.for_method(Method.ANALYTICAL)
    }
    checked_periods = {
        (record.sensor_wcet, record.buffer_size): record.min_period
        for record in checked.for_method(Method.MODEL_CHECKING)
    }
    rows = tuple(
        DominanceRow(cs, n, analytic_periods.get((cs, n)), checked_periods.get((cs, n)))
        for cs, n in sorted(analytic_periods.keys() | checked_periods.keys())
    )
    report = DominanceReport(rows)
    violations = report.violations
    if violations:
        for row in violations:
            LOGGER.error(
                "Dominance violated at C_S=%d N=%d: model checking %s > analytical %s",
                row.sensor_wcet,
                row.buffer_size,
                row.model_checking,
                row.analytical,
            )
        if strict:
            raise DominanceViolation(
                [
                    (row.sensor_wcet, row.buffer_size, row.model_checking or 0, row.analytical or 0)
                    for row in violations
                ]
            )
    else:
        LOGGER.info("Dominance holds on %d compared cells", report.compared_cells)
    return report
