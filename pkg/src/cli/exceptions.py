"""Исключения командной строки."""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

LOGGER = logging.getLogger(__name__)


class CliError(Exception):
    """Базовое исключение CLI с поддержкой контекста."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class UsageError(CliError):
    """Неизвестный флаг, пропущенный обязательный аргумент или недопустимое значение."""

    def __init__(self, reason: str, usage: str = "") -> None:
        self.reason = reason
        self.usage = usage
        super().__init__(f"Usage error: {reason}", context={"reason": reason})
