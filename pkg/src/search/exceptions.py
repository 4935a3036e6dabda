"""Исключения поиска минимальных периодов и сравнения методов."""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

LOGGER = logging.getLogger(__name__)


class SearchError(Exception):
    """Базовое исключение пакета search."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class InvalidSweepSpec(SearchError):
    """Описание сетки нарушает свои инварианты."""

    def __init__(self, problems: Sequence[str]) -> None:
        self.problems: List[str] = list(problems)
        super().__init__(
            "Invalid sweep specification: " + "; ".join(self.problems),
            context={"problems": self.problems},
        )


class TableFormatError(SearchError):
    """JSON-представление таблицы не соответствует схеме."""

    def __init__(self, reason: str) -> None:
        super().__init__(f"Malformed sweep table: {reason}", context={"reason": reason})


class DominanceViolation(SearchError):
    """Проверка моделей дала больший минимальный период, чем аналитическая граница."""

    def __init__(self, cells: Sequence[Tuple[int, int, int, int]]) -> None:
        self.cells = list(cells)
        described = ", ".join(
            f"C_S={cs} N={n}: model checking {mc} > analytical {an}" for cs, n, mc, an in self.cells
        )
        super().__init__(
            f"Dominance violated in {len(self.cells)} cell(s): {described}",
            context={"cells": self.cells},
        )
