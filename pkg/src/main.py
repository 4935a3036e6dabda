"""Точка входа wsan-sched."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from src import __version__
from src.cli.exceptions import UsageError
from src.cli.parser import parse_args
from src.cli.runner import EXIT_USAGE, CommandRunner
from src.settings.exceptions import SettingsError
from src.settings.observers import LoggingSettingsObserver
from src.settings.registry import SettingsRegistry
from src.utils.logger import configure_logging
from src.utils.paths import config_file, initialize_home, logs_dir, resolve_home

LOGGER = logging.getLogger(__name__)

_SETTINGS_JOURNAL = LoggingSettingsObserver()


def initialize_settings(config_path: Path) -> SettingsRegistry:
    """Получает singleton реестр настроек, загружает config.json и журналирует изменения."""

    registry = SettingsRegistry(config_path=config_path)
    registry.load_from_disk(config_path)
    registry.register_observer(_SETTINGS_JOURNAL)
    return registry


def setup_logging_from_settings(
    home: Path, settings: SettingsRegistry, *, verbose: bool = False
) -> None:
    """Настраивает логирование в соответствии с LoggingSettings; -v включает DEBUG."""

    logging_settings = settings.get_group("logging")
    if not logging_settings.get("enabled"):
        logging.disable(logging.CRITICAL)
        return

    logging.disable(logging.NOTSET)
    configure_logging(
        logs_dir(home),
        level_name="DEBUG" if verbose else logging_settings.get("level"),
        max_bytes=logging_settings.get("max_file_size_mb") * 1024 * 1024,
        backup_count=logging_settings.get("max_archived_files"),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Основная точка входа: окружение, настройки, логирование, команда."""

    load_dotenv(Path.cwd() / ".env")
    try:
        command = parse_args(argv)
    except UsageError as exc:
        if exc.usage:
            print(exc.usage.rstrip(), file=sys.stderr)
        print(f"error: {exc.reason}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help и --version
        return exc.code if isinstance(exc.code, int) else 0

    home = initialize_home(resolve_home())
    try:
        settings = initialize_settings(config_file(home))
    except SettingsError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging_from_settings(home, settings, verbose=command.verbose)

    LOGGER.debug("wsan-sched %s, home %s", __version__, home)
    return CommandRunner(settings, home).run(command)


if __name__ == "__main__":
    sys.exit(main())
