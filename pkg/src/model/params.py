"""Параметры модели узла WSAN и проверки их инвариантов.

Все длительности задаются целыми миллисекундами. Обозначения полей:

* ``sensor_period`` (T_S) - период сенсорной задачи, ``None`` пока его ищет поиск;
* ``sensor_wcet`` (C_S), ``sensor_bcet`` (B) - верхняя и нижняя граница её выполнения;
* ``misc_period`` (T_M), ``misc_wcet`` (C_M) - прочая периодическая нагрузка CPU;
* ``buffer_size`` (N) - число отсчётов в одном пакете;
* ``tdma_superframe`` (T_tdma) - длина суперкадра TDMA;
* ``packet_tx_times`` - множество возможных времён передачи одного пакета.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.model.exceptions import ParameterDomainError

DEFAULT_PACKET_TX_TIMES: Tuple[int, ...] = (5, 6, 7)


class MediumProtocol(str, Enum):
    """Протокол доступа к беспроводной среде."""

    TDMA = "tdma"
    BMAC = "bmac"


class RequirementId(str, Enum):
    """Два проверяемых требования к узлу."""

    INTRA_NODE_DEADLINES = "IntraNodeDeadlines"
    PACKET_BEFORE_NEXT = "PacketBeforeNext"

    @property
    def description(self) -> str:
        if self is RequirementId.INTRA_NODE_DEADLINES:
            return "every task instance is served prior to the arrival of its next instance"
        return "a packet transmission is finished before the next packet becomes ready"


@dataclass(frozen=True, slots=True)
class TaskParams:
    """Набор параметров задач и сети (значения по умолчанию - базовая конфигурация)."""

    sensor_period: Optional[int] = None
    sensor_wcet: int = 2
    sensor_bcet: int = 1
    misc_period: int = 120
    misc_wcet: int = 10
    buffer_size: int = 3
    tdma_superframe: int = 10
    packet_tx_times: Tuple[int, ...] = DEFAULT_PACKET_TX_TIMES

    @property
    def worst_case_window(self) -> int:
        """W = C_S + C_M: худшее окно ответа сенсорного задания."""

        return self.sensor_wcet + self.misc_wcet

    def with_period(self, period: int) -> "TaskParams":
        """Возвращает копию с заданным периодом сенсора."""

        return replace(self, sensor_period=period)

    def require_period(self) -> int:
        """Период сенсора, обязательный для проверки конкретной конфигурации."""

        if self.sensor_period is None:
            raise ParameterDomainError("sensor_period", None, "sensor period is not set")
        return self.sensor_period

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sensor_period": self.sensor_period,
            "sensor_wcet": self.sensor_wcet,
            "sensor_bcet": self.sensor_bcet,
            "misc_period": self.misc_period,
            "misc_wcet": self.misc_wcet,
            "buffer_size": self.buffer_size,
            "tdma_superframe": self.tdma_superframe,
            "packet_tx_times": list(self.packet_tx_times),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TaskParams":
        defaults = cls()
        period = data.get("sensor_period")
        return cls(
            sensor_period=int(period) if period is not None else None,
            sensor_wcet=int(data.get("sensor_wcet", defaults.sensor_wcet)),
            sensor_bcet=int(data.get("sensor_bcet", defaults.sensor_bcet)),
            misc_period=int(data.get("misc_period", defaults.misc_period)),
            misc_wcet=int(data.get("misc_wcet", defaults.misc_wcet)),
            buffer_size=int(data.get("buffer_size", defaults.buffer_size)),
            tdma_superframe=int(data.get("tdma_superframe", defaults.tdma_superframe)),
            packet_tx_times=tuple(
                int(value) for value in data.get("packet_tx_times", defaults.packet_tx_times)
            ),
        )


@dataclass(frozen=True, slots=True)
class BmacParams:
    """Параметры задержки отправителя в B-MAC.

    ``t_b1``/``t_f1`` - начальная случайная пауза и время прослушивания канала,
    ``t_b2``/``t_f2`` - то же для повторных попыток, ``k`` - максимум повторов,
    ``t_pkt`` - передача пакета.
    """

    t_b1: int = 5
    t_f1: int = 5
    t_b2: int = 2
    t_f2: int = 3
    k: int = 4
    t_pkt: int = 7

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_b1": self.t_b1,
            "t_f1": self.t_f1,
            "t_b2": self.t_b2,
            "t_f2": self.t_f2,
            "k": self.k,
            "t_pkt": self.t_pkt,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BmacParams":
        defaults = cls()
        return cls(**{key: int(data.get(key, getattr(defaults, key))) for key in BMAC_FIELDS})


TASK_FIELDS: Tuple[str, ...] = tuple(TaskParams().to_dict().keys())
BMAC_FIELDS: Tuple[str, ...] = ("t_b1", "t_f1", "t_b2", "t_f2", "k", "t_pkt")


def validate(params: TaskParams) -> List[str]:
    """Возвращает описания всех нарушенных инвариантов (пустой список - параметры валидны)."""

    problems: List[str] = []
    durations = {
        "sensor_wcet": params.sensor_wcet,
        "sensor_bcet": params.sensor_bcet,
        "misc_period": params.misc_period,
        "misc_wcet": params.misc_wcet,
        "tdma_superframe": params.tdma_superframe,
    }
    if params.sensor_period is not None:
        durations["sensor_period"] = params.sensor_period
    for name, value in durations.items():
        if value < 1:
            problems.append(f"{name} must be ≥ 1")
    if params.buffer_size < 1:
        problems.append("buffer_size must be ≥ 1")
    if params.sensor_bcet > params.sensor_wcet:
        problems.append("bcet exceeds wcet")
    tx_times = params.packet_tx_times
    if not tx_times:
        problems.append("packet_tx_times must be nonempty")
    else:
        if any(value < 1 for value in tx_times):
            problems.append("packet_tx_times must be ≥ 1")
        if list(tx_times) != sorted(set(tx_times)):
            problems.append("packet_tx_times must be sorted ascending without duplicates")
    return problems


def validate_bmac(params: BmacParams) -> List[str]:
    """Проверяет неотрицательность параметров B-MAC."""

    return [f"{name} must be ≥ 0" for name in BMAC_FIELDS if getattr(params, name) < 0]


def max_rate_from_period(period: int) -> int:
    """Максимальная частота выборки (отсчётов в секунду) для периода в мс: floor(1000 / T_S)."""

    if period < 1:
        raise ParameterDomainError("sensor_period", period, "period must be ≥ 1 ms")
    return 1000 // period
