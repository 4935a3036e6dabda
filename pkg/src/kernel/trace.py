"""События трассы контрпримера и их хранение в формате JSON lines."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List

from src.kernel.exceptions import TraceFormatError
from src.kernel.state import Value

LOGGER = logging.getLogger(__name__)


class TraceAction(str, Enum):
    TAKE_MESSAGE = "TakeMessage"
    RESUME = "Resume"
    DELAY = "Delay"
    CHOOSE = "Choose"
    SEND = "Send"
    ASSERT = "Assert"
    VIOLATION = "Violation"


@dataclass(frozen=True, slots=True)
class TraceEvent:
    """Одно действие актора в момент ``time``; ``choice`` - выбранное значение ветвления."""

    time: int
    actor: str
    action: TraceAction
    detail: str = ""
    choice: Value = None

    def shifted(self, delta: int) -> "TraceEvent":
        return replace(self, time=self.time + delta)

    def describe(self) -> str:
        suffix = f" [{self.choice!r}]" if self.choice is not None else ""
        return f"t={self.time} {self.actor} {self.action.value} {self.detail}{suffix}".rstrip()

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "time": self.time,
            "actor": self.actor,
            "action": self.action.value,
            "detail": self.detail,
        }
        if self.choice is not None:
            payload["choice"] = self.choice
        return payload

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TraceEvent":
        try:
            time = data["time"]
            actor = data["actor"]
            action = TraceAction(data["action"])
        except (KeyError, ValueError) as exc:
            raise TraceFormatError("event", f"missing or invalid field: {exc}") from exc
        if not isinstance(time, int) or isinstance(time, bool) or not isinstance(actor, str):
            raise TraceFormatError("event", "time must be an integer and actor a string")
        choice = data.get("choice")
        if choice is not None and not isinstance(choice, (int, str)):
            raise TraceFormatError("event", f"unsupported choice value {choice!r}")
        return cls(
            time=time,
            actor=actor,
            action=action,
            detail=str(data.get("detail", "")),
            choice=choice,
        )


def write_trace(path: Path, events: Iterable[TraceEvent]) -> Path:
    """Пишет трассу: одно событие на строку."""

    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(event.to_dict(), ensure_ascii=False) for event in events]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    LOGGER.info("Trace with %d events written to %s", len(lines), path)
    return path


def read_trace(path: Path) -> List[TraceEvent]:
    """Читает трассу, сохранённую write_trace."""

    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceFormatError(str(path), str(exc)) from exc
    events: List[TraceEvent] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"{path}:{number}", str(exc)) from exc
        if not isinstance(data, dict):
            raise TraceFormatError(f"{path}:{number}", "each line must be a JSON object")
        events.append(TraceEvent.from_dict(data))
    return events
