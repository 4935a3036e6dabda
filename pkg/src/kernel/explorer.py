"""Явный перебор достижимых состояний временной акторной модели."""

from __future__ import annotations

import logging
import random
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, Dict, Iterable, List, Optional, Tuple

from src.kernel.exceptions import ExplorationLimitExceeded
from src.kernel.model import ActorModel
from src.kernel.semantics import SemanticsOptions, Transition, advance_and_fire
from src.kernel.state import TimedState, canonicalize_with_offset
from src.kernel.trace import TraceEvent
from src.kernel.verdict import Verdict, VerdictKind

LOGGER = logging.getLogger(__name__)


class FrontierOrder(str, Enum):
    BFS = "bfs"
    DFS = "dfs"
    SHUFFLED = "shuffled"


@dataclass(frozen=True, slots=True)
class ExplorationLimits:
    """``max_time_horizon`` ограничивает абсолютное время; None - без ограничения."""

    max_states: int = 5_000_000
    max_time_horizon: Optional[int] = None


@dataclass(frozen=True, slots=True)
class ExplorerOptions:
    order: FrontierOrder = FrontierOrder.BFS
    seed: int = 0
    workers: int = 1
    stop_at_first_violation: bool = False
    progress_every: int = 10_000
    semantics: SemanticsOptions = field(default_factory=SemanticsOptions)


@dataclass(slots=True)
class _Node:
    parent: Optional[TimedState]
    events: Tuple[TraceEvent, ...]
    offset: int
    depth: int


@dataclass(slots=True)
class _Found:
    kind: VerdictKind
    source: TimedState
    events: Tuple[TraceEvent, ...]
    depth: int


class _Frontier:
    """Очередь на раскрытие: порядок BFS, DFS или перемешанный с фиксированным seed."""

    def __init__(self, order: FrontierOrder, seed: int) -> None:
        self._order = order
        self._items: Deque[TimedState] = deque()
        self._random = random.Random(seed)

    def __len__(self) -> int:
        return len(self._items)

    def push(self, state: TimedState) -> None:
        self._items.append(state)

    def pop_batch(self, size: int) -> List[TimedState]:
        batch: List[TimedState] = []
        while self._items and len(batch) < size:
            if self._order is FrontierOrder.BFS:
                batch.append(self._items.popleft())
            elif self._order is FrontierOrder.DFS:
                batch.append(self._items.pop())
            else:
                position = self._random.randrange(len(self._items))
                self._items[position], self._items[-1] = self._items[-1], self._items[position]
                batch.append(self._items.pop())
        return batch


class Explorer:
    """Раскрывает фронтир пачками; состояния сливаются в visited в главном потоке."""

    def __init__(
        self,
        model: ActorModel,
        *,
        limits: ExplorationLimits = ExplorationLimits(),
        options: ExplorerOptions = ExplorerOptions(),
    ) -> None:
        self.model = model
        self.limits = limits
        self.options = options
        self._logger = logging.getLogger(__name__)
        self._visited: Dict[TimedState, _Node] = {}
        self._found: List[_Found] = []
        self._peak_frontier = 0

    def run(self, initial: Optional[TimedState] = None) -> Verdict:
        started = time.perf_counter()
        start_state, offset = canonicalize_with_offset(initial or self.model.initial_state())
        self._visited = {start_state: _Node(None, (), offset, 0)}
        self._found = []
        frontier = _Frontier(self.options.order, self.options.seed)
        frontier.push(start_state)
        self._peak_frontier = 1

        workers = max(1, self.options.workers)
        batch_size = 1 if workers == 1 else workers * 8
        executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
        expanded = 0
        try:
            while frontier:
                batch = frontier.pop_batch(batch_size)
                for state, transitions in zip(batch, self._expand(batch, executor)):
                    expanded += 1
                    if self._merge(state, transitions, frontier):
                        return self._verdict(started)
                    if self.options.progress_every and expanded % self.options.progress_every == 0:
                        self._logger.debug(
                            "Explored %d states, frontier %d, depth %d",
                            len(self._visited),
                            len(frontier),
                            self._visited[state].depth,
                        )
                self._peak_frontier = max(self._peak_frontier, len(frontier))
        finally:
            if executor is not None:
                executor.shutdown(wait=True)
        return self._verdict(started)

    # ----------------------------------------------------------------- helpers
    def _expand(
        self, batch: List[TimedState], executor: Optional[ThreadPoolExecutor]
    ) -> Iterable[List[Transition]]:
        semantics = self.options.semantics
        if executor is None:
            return [advance_and_fire(self.model, state, semantics) for state in batch]
        return list(
            executor.map(lambda state: advance_and_fire(self.model, state, semantics), batch)
        )

    def _merge(
        self, state: TimedState, transitions: List[Transition], frontier: _Frontier
    ) -> bool:
        """Добавляет преемников; True, если исследование пора остановить."""

        node = self._visited[state]
        for transition in transitions:
            if transition.violation is not None:
                self._found.append(
                    _Found(transition.violation, state, transition.events, node.depth + 1)
                )
                if self.options.stop_at_first_violation:
                    return True
                continue
            assert transition.state is not None
            successor, shift = canonicalize_with_offset(transition.state)
            if successor in self._visited:
                continue
            offset = node.offset + shift
            horizon = self.limits.max_time_horizon
            if horizon is not None and offset + successor.now > horizon:
                raise ExplorationLimitExceeded(
                    len(self._visited), self._peak_frontier, f"time horizon {horizon} ms"
                )
            self._visited[successor] = _Node(
                state,
                tuple(event.shifted(node.offset) for event in transition.events),
                offset,
                node.depth + 1,
            )
            if len(self._visited) > self.limits.max_states:
                raise ExplorationLimitExceeded(
                    len(self._visited),
                    max(self._peak_frontier, len(frontier)),
                    f"max_states {self.limits.max_states}",
                )
            frontier.push(successor)
        return False

    def _verdict(self, started: float) -> Verdict:
        wall_time_ms = int((time.perf_counter() - started) * 1000)
        if not self._found:
            self._logger.info(
                "Schedulable: %d states, peak frontier %d, %d ms",
                len(self._visited),
                self._peak_frontier,
                wall_time_ms,
            )
            return Verdict(
                VerdictKind.SCHEDULABLE,
                (),
                len(self._visited),
                self._peak_frontier,
                wall_time_ms,
            )

        best = min(
            enumerate(self._found), key=lambda item: (item[1].kind.priority, item[1].depth, item[0])
        )[1]
        trace = self._path_to(best.source) + tuple(
            event.shifted(self._visited[best.source].offset) for event in best.events
        )
        self._logger.info(
            "%s after %d states (%d violating transitions found), trace of %d events",
            best.kind.value,
            len(self._visited),
            len(self._found),
            len(trace),
        )
        return Verdict(best.kind, trace, len(self._visited), self._peak_frontier, wall_time_ms)

    def _path_to(self, state: TimedState) -> Tuple[TraceEvent, ...]:
        chunks: List[Tuple[TraceEvent, ...]] = []
        current: Optional[TimedState] = state
        while current is not None:
            node = self._visited[current]
            chunks.append(node.events)
            current = node.parent
        return tuple(event for chunk in reversed(chunks) for event in chunk)


def explore(
    model: ActorModel,
    initial: Optional[TimedState] = None,
    limits: ExplorationLimits = ExplorationLimits(),
    options: ExplorerOptions = ExplorerOptions(),
) -> Verdict:
    """Исследует пространство состояний и возвращает вердикт.

    Без ``stop_at_first_violation`` достижимое множество замыкается целиком, а вид
    вердикта выбирается по приоритету DeadlineMiss > AssertionFailure > QueueOverflow,
    поэтому он не зависит от порядка обхода и числа потоков.
    """

    return Explorer(model, limits=limits, options=options).run(initial)
