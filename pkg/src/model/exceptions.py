"""Исключения модели параметров системы."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional

LOGGER = logging.getLogger(__name__)


class ModelError(Exception):
    """Базовое исключение модели с поддержкой контекста."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        """Сохраняет сообщение и контекст, логируя ошибку."""

        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class ParameterDomainError(ModelError):
    """Аргумент функции вне допустимой области значений."""

    def __init__(self, name: str, value: Any, reason: str) -> None:
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(
            f"Parameter '{name}' out of domain: {reason} (value={value!r})",
            context={"name": name, "value": value, "reason": reason},
        )


class ParameterFileError(ModelError):
    """Файл параметров не читается или содержит недопустимые ключи."""

    def __init__(self, path: Path, reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(
            f"Invalid parameter file '{path}': {reason}",
            context={"path": str(path), "reason": reason},
        )
