"""Наблюдатели за изменениями настроек."""

from __future__ import annotations

import logging
import sys
from typing import Iterable, Protocol, TextIO, runtime_checkable


@runtime_checkable
class SettingsObserver(Protocol):
    """Базовый контракт наблюдателя."""

    def on_setting_changed(
        self,
        group: str,
        key: str,
        old_value: object,
        new_value: object,
    ) -> None:
        """Обрабатывает событие изменения конкретного ключа."""


class LoggingSettingsObserver:
    """Отправляет изменения в журнал на уровне DEBUG."""

    def __init__(self) -> None:
        self._logger = logging.getLogger(__name__)

    def on_setting_changed(
        self,
        group: str,
        key: str,
        old_value: object,
        new_value: object,
    ) -> None:
        self._logger.debug("Setting changed: %s.%s (%r -> %r)", group, key, old_value, new_value)


class FlagOverrideObserver:
    """Предупреждает в stderr, когда флаг командной строки перекрывает значение из файла.

    Срабатывает только при фактическом изменении значения. Если задан ``watched``,
    учитываются лишь ключи вида ``group.key`` из этого набора.
    """

    def __init__(
        self, stream: TextIO | None = None, watched: Iterable[str] | None = None
    ) -> None:
        self._stream = stream
        self._watched = set(watched) if watched is not None else None
        self._logger = logging.getLogger(__name__)
        self.overridden: list[str] = []

    def on_setting_changed(
        self,
        group: str,
        key: str,
        old_value: object,
        new_value: object,
    ) -> None:
        if old_value == new_value:
            return
        name = f"{group}.{key}"
        if self._watched is not None and name not in self._watched:
            return
        self.overridden.append(name)
        self._logger.warning("Flag overrides %s: %r -> %r", name, old_value, new_value)
        stream = self._stream or sys.stderr
        print(
            f"warning: command-line flag overrides {name} ({old_value!r} -> {new_value!r})",
            file=stream,
        )
