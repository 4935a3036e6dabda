"""Аналитические тесты планируемости и граница минимального периода."""

from src.analysis.bounds import (
    AnalyticBound,
    BindingConstraint,
    FormulaVariant,
    ResponseLowerBound,
    bmac_delay,
    fifo_schedulable,
    medium_access_ok,
    min_feasible_period,
    min_feasible_period_bmac,
    packet_ready_time,
    utilization,
)
from src.analysis.exceptions import AnalysisError, InfeasibleConfigurationError

__all__ = [
    "AnalysisError",
    "AnalyticBound",
    "BindingConstraint",
    "FormulaVariant",
    "InfeasibleConfigurationError",
    "ResponseLowerBound",
    "bmac_delay",
    "fifo_schedulable",
    "medium_access_ok",
    "min_feasible_period",
    "min_feasible_period_bmac",
    "packet_ready_time",
    "utilization",
]
