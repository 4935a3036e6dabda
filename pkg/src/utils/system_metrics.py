"""Сведения о машине для метаданных прогонов при помощи psutil."""

from __future__ import annotations

import platform
from dataclasses import dataclass
from typing import Any, Dict

import psutil


@dataclass(slots=True)
class HostInfo:
    """Контейнер с характеристиками машины, на которой шёл прогон."""

    cpu_count: int
    memory_total: str
    platform: str
    python: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cpu_count": self.cpu_count,
            "memory_total": self.memory_total,
            "platform": self.platform,
            "python": self.python,
        }


def read_host_info() -> HostInfo:
    """Возвращает число логических CPU, объём памяти и версию интерпретатора."""

    memory = psutil.virtual_memory()
    return HostInfo(
        cpu_count=psutil.cpu_count(logical=True) or 1,
        memory_total=_format_bytes(memory.total),
        platform=platform.platform(terse=True),
        python=platform.python_version(),
    )


def _format_bytes(value: float) -> str:
    """Форматирует байты в удобочитаемый вид."""

    units = ["B", "KB", "MB", "GB", "TB"]
    size = float(value)
    index = 0
    while size >= 1024 and index < len(units) - 1:
        size /= 1024.0
        index += 1
    return f"{size:.1f} {units[index]}"
