"""Централизованное описание путей рабочего каталога."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Mapping, Optional

HOME_ENV = "WSAN_SCHED_HOME"

# DEFAULT_HOME - каталог по умолчанию для настроек, логов и трасс
DEFAULT_HOME = Path.home() / ".wsan-sched"


def resolve_home(environ: Optional[Mapping[str, str]] = None) -> Path:
    """Каталог из WSAN_SCHED_HOME либо ~/.wsan-sched."""

    env = os.environ if environ is None else environ
    value = env.get(HOME_ENV)
    return Path(value).expanduser() if value else DEFAULT_HOME


def config_file(home: Path) -> Path:
    return home / "config.json"


def logs_dir(home: Path) -> Path:
    return home / "logs"


def traces_dir(home: Path) -> Path:
    return home / "traces"


def initialize_home(home: Path) -> Path:
    """Создаёт каталог и подкаталоги logs/ и traces/."""

    for directory in (home, logs_dir(home), traces_dir(home)):
        directory.mkdir(parents=True, exist_ok=True)
    return home
