"""Исключения ядра акторной модели."""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from src.kernel.trace import TraceEvent

LOGGER = logging.getLogger(__name__)


class KernelError(Exception):
    """Базовое исключение ядра с поддержкой контекста."""

    def __init__(self, message: str, *, context: Optional[Dict[str, Any]] = None) -> None:
        self.message = message
        self.context = context or {}
        super().__init__(message)
        LOGGER.error("%s | context=%s", message, self.context)


class ModelDefinitionError(KernelError):
    """Модель собрана некорректно: неизвестный актор/обработчик, ёмкость < 1 и т.п."""

    def __init__(self, reason: str, **context: Any) -> None:
        self.reason = reason
        super().__init__(f"Invalid actor model: {reason}", context=dict(context))


class ExplorationLimitExceeded(KernelError):
    """Исследование остановлено по лимиту; результат не является Schedulable."""

    def __init__(self, states_explored: int, peak_frontier: int, reason: str) -> None:
        self.states_explored = states_explored
        self.peak_frontier = peak_frontier
        self.reason = reason
        super().__init__(
            f"Exploration limit exceeded ({reason}) after {states_explored} states",
            context={
                "states_explored": states_explored,
                "peak_frontier": peak_frontier,
                "reason": reason,
            },
        )


class ReplayDivergence(KernelError):
    """Повтор трассы разошёлся с моделью на указанном событии."""

    def __init__(self, index: int, event: Optional["TraceEvent"], reason: str) -> None:
        self.index = index
        self.event = event
        self.reason = reason
        described = event.describe() if event is not None else "<end of trace>"
        super().__init__(
            f"Replay diverged at event #{index} ({described}): {reason}",
            context={"index": index, "reason": reason},
        )


class TraceFormatError(KernelError):
    """Файл трассы повреждён или не соответствует схеме."""

    def __init__(self, location: str, reason: str) -> None:
        super().__init__(
            f"Malformed trace at {location}: {reason}",
            context={"location": location, "reason": reason},
        )
