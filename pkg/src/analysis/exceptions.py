"""Исключения аналитического модуля."""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

LOGGER = logging.getLogger(__name__)


class AnalysisError(Exception):
    """Базовое исключение аналитических проверок."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class InfeasibleConfigurationError(AnalysisError):
    """Ни один период сенсора не удовлетворяет тесту FIFO очереди (C_M + C_S > T_M)."""

    def __init__(self, misc_wcet: int, sensor_wcet: int, misc_period: int) -> None:
        super().__init__(
            f"C_M + C_S = {misc_wcet + sensor_wcet} exceeds T_M = {misc_period}; "
            "no sensor period is feasible",
            context={
                "misc_wcet": misc_wcet,
                "sensor_wcet": sensor_wcet,
                "misc_period": misc_period,
            },
        )
