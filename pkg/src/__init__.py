"""Корневой пакет WSAN Sched со служебными метаданными."""

__all__ = [
    "__version__",  # версия попадает в метаданные таблиц и в логи
]

# __version__ записывается в метаданные каждой таблицы sweep
__version__ = "0.1.0"
