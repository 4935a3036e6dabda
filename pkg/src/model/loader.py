"""Загрузка плоского JSON-файла параметров через pydantic."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.model.exceptions import ParameterFileError
from src.model.params import BMAC_FIELDS, TASK_FIELDS, BmacParams, TaskParams

LOGGER = logging.getLogger(__name__)


class ParameterFileSchema(BaseModel):
    """Схема файла параметров: все ключи необязательны, неизвестные запрещены."""

    model_config = ConfigDict(extra="forbid", strict=True)

    sensor_period: Optional[int] = Field(default=None, ge=1)
    sensor_wcet: Optional[int] = None
    sensor_bcet: Optional[int] = None
    misc_period: Optional[int] = None
    misc_wcet: Optional[int] = None
    buffer_size: Optional[int] = None
    tdma_superframe: Optional[int] = None
    packet_tx_times: Optional[List[int]] = None
    t_b1: Optional[int] = None
    t_f1: Optional[int] = None
    t_b2: Optional[int] = None
    t_f2: Optional[int] = None
    k: Optional[int] = None
    t_pkt: Optional[int] = None


@dataclass(slots=True)
class ParameterSet:
    """Результат разбора файла: параметры и набор реально заданных ключей."""

    task: TaskParams = field(default_factory=TaskParams)
    bmac: BmacParams = field(default_factory=BmacParams)
    provided: Dict[str, Any] = field(default_factory=dict)


def parse_parameters(data: Dict[str, Any], *, source: Path = Path("<memory>")) -> ParameterSet:
    """Проверяет словарь по схеме и собирает из него ParameterSet."""

    try:
        document = ParameterFileSchema.model_validate(data)
    except ValidationError as exc:
        raise ParameterFileError(source, _summarize(exc)) from exc

    provided = document.model_dump(exclude_none=True)
    task_values = {key: value for key, value in provided.items() if key in TASK_FIELDS}
    bmac_values = {key: value for key, value in provided.items() if key in BMAC_FIELDS}
    return ParameterSet(
        task=TaskParams.from_dict(task_values),
        bmac=BmacParams.from_dict(bmac_values),
        provided=provided,
    )


def load_parameter_file(path: Path) -> ParameterSet:
    """Читает JSON-файл параметров с диска."""

    try:
        content = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterFileError(path, str(exc)) from exc
    if not isinstance(content, dict):
        raise ParameterFileError(path, "top-level JSON value must be an object")
    parameters = parse_parameters(content, source=path)
    LOGGER.debug("Loaded %d parameters from %s", len(parameters.provided), path)
    return parameters


def _summarize(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"]) or "<root>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)
