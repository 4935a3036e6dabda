"""Вердикт исследования пространства состояний."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from src.kernel.trace import TraceEvent
from src.model.params import RequirementId


class VerdictKind(str, Enum):
    SCHEDULABLE = "Schedulable"
    DEADLINE_MISS = "DeadlineMiss"
    ASSERTION_FAILURE = "AssertionFailure"
    QUEUE_OVERFLOW = "QueueOverflow"

    @property
    def priority(self) -> int:
        """Чем меньше, тем важнее при выборе вида нарушения."""

        return _PRIORITY[self]

    @property
    def requirement(self) -> Optional[RequirementId]:
        if self is VerdictKind.DEADLINE_MISS:
            return RequirementId.INTRA_NODE_DEADLINES
        if self is VerdictKind.ASSERTION_FAILURE:
            return RequirementId.PACKET_BEFORE_NEXT
        return None


_PRIORITY = {
    VerdictKind.DEADLINE_MISS: 0,
    VerdictKind.ASSERTION_FAILURE: 1,
    VerdictKind.QUEUE_OVERFLOW: 2,
    VerdictKind.SCHEDULABLE: 3,
}


@dataclass(frozen=True, slots=True)
class Verdict:
    kind: VerdictKind
    trace: Tuple[TraceEvent, ...] = ()
    states_explored: int = 0
    peak_frontier: int = 0
    wall_time_ms: int = 0

    @property
    def schedulable(self) -> bool:
        return self.kind is VerdictKind.SCHEDULABLE

    def summary(self) -> Dict[str, Any]:
        requirement = self.kind.requirement
        return {
            "kind": self.kind.value,
            "requirement": requirement.value if requirement is not None else None,
            "states_explored": self.states_explored,
            "peak_frontier": self.peak_frontier,
            "wall_time_ms": self.wall_time_ms,
            "trace_length": len(self.trace),
        }


def write_verdict_summary(path: Path, verdict: Verdict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(verdict.summary(), indent=2), encoding="utf-8")
    return path
