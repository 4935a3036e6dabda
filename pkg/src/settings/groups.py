"""Группы настроек рабочего места: логирование, исследование, поиск, геометрия сети."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

from src.settings.exceptions import SettingsNotFoundError, SettingsValidationError
from src.settings.validators import (
    CompositeValidator,
    EnumValidator,
    IntegerValidator,
    RangeValidator,
    TypeValidator,
    Validator,
)


def _integer(min_value: int | None = None, max_value: int | None = None) -> Validator:
    return CompositeValidator([IntegerValidator(), RangeValidator(min_value, max_value)])


class SettingsGroup(ABC):
    """Абстрактная база для конкретных групп настроек."""

    group_name: str = ""

    def __init__(self) -> None:
        self._defaults: Dict[str, Any] = {}
        self._validators: Dict[str, Validator] = {}
        self._values: Dict[str, Any] = {}
        self._initialize_defaults()
        self._setup_validators()
        self.reset_to_defaults()

    @abstractmethod
    def _initialize_defaults(self) -> None:
        """Задаёт значения по умолчанию для группы."""

    @abstractmethod
    def _setup_validators(self) -> None:
        """Привязывает валидаторы к ключам группы."""

    def keys(self) -> Tuple[str, ...]:
        return tuple(self._defaults.keys())

    def get(self, key: str, default: Any = None) -> Any:
        if key not in self._defaults:
            raise SettingsNotFoundError(self.group_name, key)
        return self._values.get(key, default)

    def validate(self, key: str, value: Any) -> Tuple[bool, str]:
        validator = self._validators.get(key)
        if not validator:
            return True, ""
        return validator.validate(value)

    def set(self, key: str, value: Any) -> None:
        """Сохраняет значение, выбрасывая ошибку при невалидных данных."""

        if key not in self._defaults:
            raise SettingsNotFoundError(self.group_name, key)
        is_valid, error = self.validate(key, value)
        if not is_valid:
            raise SettingsValidationError(
                key=f"{self.group_name}.{key}",
                value=value,
                reason=error,
            )
        self._values[key] = value

    def to_dict(self) -> Dict[str, Any]:
        return dict(self._values)

    def get_default(self, key: str) -> Any:
        if key not in self._defaults:
            raise SettingsNotFoundError(self.group_name, key)
        return self._defaults[key]

    def from_dict(self, data: Dict[str, Any]) -> None:
        """Заполняет значениями из словаря; неизвестные ключи пропускаются."""

        for key, value in data.items():
            if key in self._defaults:
                self.set(key, value)

    def reset_to_defaults(self) -> None:
        self._values = dict(self._defaults)


class LoggingSettings(SettingsGroup):
    """Настройки журнала: уровень и ротация файла wsan-sched.log."""

    group_name = "logging"

    def _initialize_defaults(self) -> None:
        self._defaults = {
            "enabled": True,
            "level": "INFO",
            "max_file_size_mb": 10,
            "max_archived_files": 5,
        }

    def _setup_validators(self) -> None:
        self._validators = {
            "enabled": TypeValidator(bool),
            "level": EnumValidator(["DEBUG", "INFO", "WARNING", "ERROR"]),
            "max_file_size_mb": _integer(1, 1000),
            "max_archived_files": _integer(1, 50),
        }


class ExplorerSettings(SettingsGroup):
    """Лимиты и порядок обхода пространства состояний.

    ``max_time_horizon_ms`` равный 0 означает отсутствие ограничения по времени модели.
    """

    group_name = "explorer"

    def _initialize_defaults(self) -> None:
        self._defaults = {
            "max_states": 5_000_000,
            "max_time_horizon_ms": 0,
            "frontier_order": "bfs",
            "seed": 0,
            "progress_every": 10_000,
            "deadline_inclusive": False,
            "worst_case_delays": False,
        }

    def _setup_validators(self) -> None:
        self._validators = {
            "max_states": _integer(1),
            "max_time_horizon_ms": _integer(0),
            "frontier_order": EnumValidator(["bfs", "dfs", "shuffled"]),
            "seed": IntegerValidator(),
            "progress_every": _integer(1),
            "deadline_inclusive": TypeValidator(bool),
            "worst_case_delays": TypeValidator(bool),
        }


class SearchSettings(SettingsGroup):
    """Диапазон поиска периода, стратегия и число воркеров."""

    group_name = "search"

    def _initialize_defaults(self) -> None:
        self._defaults = {
            "period_lo": 1,
            "period_hi": 200,
            "strategy": "linear",
            "jobs": 1,
        }

    def _setup_validators(self) -> None:
        self._validators = {
            "period_lo": _integer(1),
            "period_hi": _integer(1),
            "strategy": EnumValidator(["linear", "binary"]),
            "jobs": _integer(1, 1024),
        }


class NetworkSettings(SettingsGroup):
    """Геометрия слотов TDMA и фазы задач; ``slot_size_ms`` 0 - суперкадр делится поровну."""

    group_name = "network"

    def _initialize_defaults(self) -> None:
        self._defaults = {
            "number_of_nodes": 2,
            "slot_size_ms": 0,
            "slot_offset_ms": 0,
            "misc_offset_ms": 0,
            "packet_release": "handoff",
        }

    def _setup_validators(self) -> None:
        self._validators = {
            "number_of_nodes": _integer(1, 1000),
            "slot_size_ms": _integer(0),
            "slot_offset_ms": _integer(0),
            "misc_offset_ms": _integer(0),
            "packet_release": EnumValidator(["handoff", "completion"]),
        }
