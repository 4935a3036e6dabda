"""Пакет настроек рабочего места: реестр групп и наблюдатели."""

from src.settings.observers import FlagOverrideObserver, LoggingSettingsObserver
from src.settings.registry import SettingsRegistry

__all__ = [
    "FlagOverrideObserver",
    "LoggingSettingsObserver",
    "SettingsRegistry",  # экспортируем главный реестр настроек
]
