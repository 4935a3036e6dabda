"""Модель системы: параметры задач и сети, требования, отображение период -> частота."""

from src.model.exceptions import ModelError, ParameterDomainError, ParameterFileError
from src.model.params import (
    BmacParams,
    MediumProtocol,
    RequirementId,
    TaskParams,
    max_rate_from_period,
    validate,
    validate_bmac,
)

__all__ = [
    "BmacParams",
    "MediumProtocol",
    "ModelError",
    "ParameterDomainError",
    "ParameterFileError",
    "RequirementId",
    "TaskParams",
    "max_rate_from_period",
    "validate",
    "validate_bmac",
]
