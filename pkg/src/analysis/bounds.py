"""Замкнутые тесты планируемости узла и поиск минимального допустимого периода.

Два условия:

* тест FIFO очереди CPU: ``C_M + C_S <= min(T_M, T_S)``;
* тест доступа к среде: ``T_tdma < N*T_S + B - W`` (по умолчанию нестрогое ``<=``,
  так воспроизводится опубликованная таблица при ``T_S = 20``, ``N = 1``).

Для B-MAC длина суперкадра заменяется задержкой отправителя ``t_sd``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict

from src.analysis.exceptions import InfeasibleConfigurationError
from src.model.exceptions import ParameterDomainError
from src.model.params import BmacParams, TaskParams

LOGGER = logging.getLogger(__name__)


class FormulaVariant(str, Enum):
    """Вариант числителя в границе периода."""

    EQ6_CONSISTENT = "eq6"
    EQ7_LITERAL = "eq7"


class BindingConstraint(str, Enum):
    """Какое из двух условий определяет минимальный период."""

    FIFO_QUEUE_TEST = "FifoQueueTest"
    MEDIUM_ACCESS_TEST = "MediumAccessTest"


class ResponseLowerBound(str, Enum):
    """Источник нижней границы B времени ответа сенсорного задания."""

    WCET = "wcet"
    BCET = "bcet"


@dataclass(frozen=True, slots=True)
class AnalyticBound:
    """Минимальный период и ограничение, которое его задаёт."""

    min_period: int
    binding_constraint: BindingConstraint
    formula_variant: FormulaVariant
    strict: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_period": self.min_period,
            "binding_constraint": self.binding_constraint.value,
            "formula_variant": self.formula_variant.value,
            "strict": self.strict,
        }


def response_lower_bound(params: TaskParams, source: ResponseLowerBound) -> int:
    """Значение B: C_S по умолчанию либо BCET сенсорного задания."""

    if source is ResponseLowerBound.BCET:
        return params.sensor_bcet
    return params.sensor_wcet


def fifo_schedulable(params: TaskParams) -> bool:
    """Достаточный тест планируемости очереди CPU."""

    period = params.require_period()
    return params.misc_wcet + params.sensor_wcet <= min(params.misc_period, period)


def packet_ready_time(params: TaskParams, j: int, response_time: int) -> int:
    """Момент готовности j-го пакета: (j*N - 1)*T_S + R_jN."""

    if j < 1:
        raise ParameterDomainError("j", j, "packet index must be ≥ 1")
    if response_time < params.sensor_bcet:
        raise ParameterDomainError("response_time", response_time, "response time below bcet")
    return (j * params.buffer_size - 1) * params.require_period() + response_time


def medium_access_ok(
    params: TaskParams,
    *,
    strict: bool = False,
    lower_bound: ResponseLowerBound = ResponseLowerBound.WCET,
    medium_delay: int | None = None,
) -> bool:
    """Условие доступа к среде: T_tdma < N*T_S + B - W (или <= в нестрогом режиме)."""

    delay = params.tdma_superframe if medium_delay is None else medium_delay
    slack = (
        params.buffer_size * params.require_period()
        + response_lower_bound(params, lower_bound)
        - params.worst_case_window
    )
    return delay < slack if strict else delay <= slack


def medium_access_numerator(
    params: TaskParams,
    variant: FormulaVariant,
    *,
    lower_bound: ResponseLowerBound = ResponseLowerBound.WCET,
    medium_delay: int | None = None,
) -> int:
    delay = params.tdma_superframe if medium_delay is None else medium_delay
    if variant is FormulaVariant.EQ7_LITERAL:
        return delay + params.misc_wcet + params.sensor_wcet
    return delay + params.worst_case_window - response_lower_bound(params, lower_bound)


def min_feasible_period(
    params: TaskParams,
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT,
    *,
    strict: bool = False,
    lower_bound: ResponseLowerBound = ResponseLowerBound.WCET,
    medium_delay: int | None = None,
) -> AnalyticBound:
    """Наименьший целый T_S, удовлетворяющий обоим условиям.

    Поле ``sensor_period`` входных параметров игнорируется. При равенстве двух
    границ связывающим считается тест FIFO очереди.
    """

    fifo_floor = params.misc_wcet + params.sensor_wcet
    if fifo_floor > params.misc_period:
        raise InfeasibleConfigurationError(
            params.misc_wcet, params.sensor_wcet, params.misc_period
        )

    numerator = medium_access_numerator(
        params, variant, lower_bound=lower_bound, medium_delay=medium_delay
    )
    n = params.buffer_size
    medium_floor = numerator // n + 1 if strict else math.ceil(numerator / n)

    if medium_floor > fifo_floor:
        bound = AnalyticBound(medium_floor, BindingConstraint.MEDIUM_ACCESS_TEST, variant, strict)
    else:
        bound = AnalyticBound(
            max(fifo_floor, 1), BindingConstraint.FIFO_QUEUE_TEST, variant, strict
        )
    LOGGER.debug(
        "Analytic bound C_S=%d N=%d medium=%d -> %d (%s)",
        params.sensor_wcet,
        n,
        numerator,
        bound.min_period,
        bound.binding_constraint.value,
    )
    return bound


def bmac_delay(bmac: BmacParams) -> int:
    """Задержка отправителя B-MAC: t_b1 + t_f1 + k*(t_b2 + t_f2) + t_pkt."""

    return bmac.t_b1 + bmac.t_f1 + bmac.k * (bmac.t_b2 + bmac.t_f2) + bmac.t_pkt


def min_feasible_period_bmac(
    params: TaskParams,
    bmac: BmacParams,
    variant: FormulaVariant = FormulaVariant.EQ6_CONSISTENT,
    *,
    strict: bool = False,
    lower_bound: ResponseLowerBound = ResponseLowerBound.WCET,
) -> AnalyticBound:
    """То же, что min_feasible_period, с t_sd вместо T_tdma."""

    substituted = replace(params, tdma_superframe=bmac_delay(bmac))
    return min_feasible_period(substituted, variant, strict=strict, lower_bound=lower_bound)


def utilization(params: TaskParams) -> float:
    """Загрузка CPU: C_S/T_S + C_M/T_M."""

    return params.sensor_wcet / params.require_period() + params.misc_wcet / params.misc_period
