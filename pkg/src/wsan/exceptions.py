"""Исключения сборки сети акторов WSAN."""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

LOGGER = logging.getLogger(__name__)


class WsanError(Exception):
    """Базовое исключение пакета wsan."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class NetworkConfigurationError(WsanError):
    """Комбинация протокола, параметров и геометрии слотов недопустима."""

    def __init__(self, reason: str, **context: Any) -> None:
        self.reason = reason
        super().__init__(f"Invalid network configuration: {reason}", context=dict(context))
