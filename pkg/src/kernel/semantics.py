"""Временная семантика: продвижение времени и один раунд срабатываний.

Раунд выполняется в момент ``t = next_event_time``. Акторы обходятся в порядке
объявления, каждый выполняет не более одного события: продолжение после delay
(имеет приоритет) либо одно сообщение из очереди с наименьшим временем
прибытия. Равные по времени прибытия сообщения дают отдельные ветви. Остаток
работы в тот же момент достаётся следующему раунду.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Deque, Dict, List, Optional, Tuple

from src.kernel.exceptions import ModelDefinitionError
from src.kernel.model import (
    ActorDef,
    ActorModel,
    AssertionViolated,
    BranchPoint,
    ChoiceRecord,
    Delay,
    HandlerContext,
    HandlerDef,
    LogEntry,
    PendingSend,
    Segment,
)
from src.kernel.state import (
    ActorSnapshot,
    Continuation,
    MessageInstance,
    TimedState,
    Value,
    deadline_expired,
    next_event_time,
)
from src.kernel.trace import TraceAction, TraceEvent
from src.kernel.verdict import VerdictKind

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SemanticsOptions:
    """``deadline_inclusive`` допускает обслуживание ровно в момент дедлайна;
    ``worst_case_delays`` оставляет от каждой задержки только максимум."""

    deadline_inclusive: bool = False
    worst_case_delays: bool = False


@dataclass(frozen=True, slots=True)
class Transition:
    """Ветвь раунда: события и состояние-преемник либо вид нарушения."""

    time: int
    events: Tuple[TraceEvent, ...]
    state: Optional[TimedState] = None
    violation: Optional[VerdictKind] = None


@dataclass(slots=True)
class _Branch:
    actors: List[ActorSnapshot]
    events: List[TraceEvent] = field(default_factory=list)
    violation: Optional[VerdictKind] = None

    def fork(self) -> "_Branch":
        return _Branch(list(self.actors), list(self.events), self.violation)


@dataclass(slots=True)
class _SegmentRun:
    variables: Dict[str, Value]
    locals: Dict[str, Value]
    log: List[LogEntry]
    delay: Optional[Delay]
    failed_assertion: Optional[str] = None


def advance_and_fire(
    model: ActorModel,
    state: TimedState,
    options: SemanticsOptions = SemanticsOptions(),
) -> List[Transition]:
    """Все ветви одного раунда; пустой список - модель в покое."""

    now = next_event_time(state, deadline_inclusive=options.deadline_inclusive)
    if now is None:
        return []

    missed = _find_missed_deadline(state, now, options.deadline_inclusive)
    if missed is not None:
        event = TraceEvent(
            now,
            missed.target,
            TraceAction.VIOLATION,
            f"deadline missed: {missed.describe()}",
        )
        return [Transition(now, (event,), None, VerdictKind.DEADLINE_MISS)]

    results: List[Transition] = []
    branches = [_Branch(list(state.actors))]
    for index in range(len(model.actors)):
        next_branches: List[_Branch] = []
        for branch in branches:
            outcomes = _fire_actor(model, branch, index, now, options)
            if outcomes is None:
                next_branches.append(branch)
                continue
            for outcome in outcomes:
                if outcome.violation is not None:
                    results.append(
                        Transition(now, tuple(outcome.events), None, outcome.violation)
                    )
                else:
                    next_branches.append(outcome)
        branches = next_branches

    for branch in branches:
        successor = TimedState(now=now, actors=tuple(branch.actors))
        results.append(Transition(now, tuple(branch.events), successor))
    return results


def _find_missed_deadline(
    state: TimedState, now: int, inclusive: bool
) -> Optional[MessageInstance]:
    for actor in state.actors:
        for message in actor.bag:
            if deadline_expired(message, now, inclusive=inclusive):
                return message
    return None


def _fire_actor(
    model: ActorModel,
    branch: _Branch,
    index: int,
    now: int,
    options: SemanticsOptions,
) -> Optional[List[_Branch]]:
    """Ветви после события актора index или None, если актор в этом раунде не срабатывает."""

    snapshot = branch.actors[index]
    actor_id = snapshot.actor_id

    if snapshot.continuation is not None:
        if snapshot.busy_until != now:
            return None
        continuation = snapshot.continuation
        handler = model.handler(actor_id, continuation.handler)
        resumed = branch.fork()
        resumed.actors[index] = replace(snapshot, busy_until=None, continuation=None)
        resumed.events.append(
            TraceEvent(
                now,
                actor_id,
                TraceAction.RESUME,
                f"{continuation.handler}@{continuation.resume_at}",
            )
        )
        return _run_handler(
            model,
            resumed,
            index,
            now,
            handler,
            continuation.resume_at,
            dict(continuation.locals),
            continuation.served_arrival,
            continuation.sender,
            options,
        )

    enabled = [message for message in snapshot.bag if message.arrival_time <= now]
    if not enabled:
        return None
    earliest = min(message.arrival_time for message in enabled)
    candidates: List[MessageInstance] = []
    for message in enabled:
        if message.arrival_time == earliest and message not in candidates:
            candidates.append(message)

    outcomes: List[_Branch] = []
    for message in candidates:
        taken = branch.fork()
        bag = list(snapshot.bag)
        bag.remove(message)
        taken.actors[index] = replace(snapshot, bag=tuple(bag))
        taken.events.append(
            TraceEvent(now, actor_id, TraceAction.TAKE_MESSAGE, message.describe())
        )
        if deadline_expired(message, now, inclusive=options.deadline_inclusive):
            taken.events.append(
                TraceEvent(
                    now,
                    actor_id,
                    TraceAction.VIOLATION,
                    f"deadline missed: {message.describe()}",
                )
            )
            taken.violation = VerdictKind.DEADLINE_MISS
            outcomes.append(taken)
            continue
        handler = model.handler(actor_id, message.handler)
        if len(handler.params) != len(message.payload):
            raise ModelDefinitionError(
                "payload does not match handler parameters",
                actor=actor_id,
                handler=handler.name,
                payload=message.payload,
            )
        outcomes.extend(
            _run_handler(
                model,
                taken,
                index,
                now,
                handler,
                0,
                dict(zip(handler.params, message.payload)),
                message.arrival_time,
                message.sender,
                options,
            )
        )
    return outcomes


def _run_handler(
    model: ActorModel,
    branch: _Branch,
    index: int,
    now: int,
    handler: HandlerDef,
    start: int,
    locals_: Dict[str, Value],
    served_arrival: int,
    sender: str,
    options: SemanticsOptions,
) -> List[_Branch]:
    actor_def = model.actors[index]
    finished: List[_Branch] = []
    work: Deque[Tuple[_Branch, int, Dict[str, Value]]] = deque([(branch, start, locals_)])

    while work:
        current, position, local_values = work.popleft()
        snapshot = current.actors[index]
        if position >= len(handler.segments):
            current.actors[index] = replace(snapshot, busy_until=None, continuation=None)
            finished.append(current)
            continue

        runs = _enumerate_segment(
            handler.segments[position],
            actor_def=actor_def,
            now=now,
            sender=sender,
            served_arrival=served_arrival,
            variables=dict(snapshot.variables),
            locals_=local_values,
        )
        for run in runs:
            outcome = current.fork()
            outcome.actors[index] = replace(
                outcome.actors[index],
                variables=tuple(run.variables.items()),
            )
            _apply_log(model, outcome, index, now, run.log)
            if outcome.violation is not None:
                finished.append(outcome)
                continue
            if run.failed_assertion is not None:
                actor_id = actor_def.actor_id
                outcome.events.append(
                    TraceEvent(now, actor_id, TraceAction.ASSERT, run.failed_assertion, False)
                )
                outcome.events.append(
                    TraceEvent(
                        now,
                        actor_id,
                        TraceAction.VIOLATION,
                        f"assertion failed in {handler.name}: {run.failed_assertion}",
                    )
                )
                outcome.violation = VerdictKind.ASSERTION_FAILURE
                finished.append(outcome)
                continue
            if run.delay is None:
                work.append((outcome, position + 1, run.locals))
                continue

            durations = run.delay.choices
            if options.worst_case_delays:
                durations = (max(durations),)
            saved = tuple(sorted(run.locals.items()))
            for duration in durations:
                delayed = outcome.fork()
                delayed.events.append(
                    TraceEvent(
                        now, actor_def.actor_id, TraceAction.DELAY, handler.name, duration
                    )
                )
                delayed.actors[index] = replace(
                    delayed.actors[index],
                    busy_until=now + duration,
                    continuation=Continuation(
                        handler=handler.name,
                        resume_at=position + 1,
                        locals=saved,
                        served_arrival=served_arrival,
                        sender=sender,
                    ),
                )
                finished.append(delayed)
    return finished


def _enumerate_segment(
    segment: Segment,
    *,
    actor_def: ActorDef,
    now: int,
    sender: str,
    served_arrival: int,
    variables: Dict[str, Value],
    locals_: Dict[str, Value],
) -> List[_SegmentRun]:
    """Выполняет сегмент для каждого набора недетерминированных выборов."""

    runs: List[_SegmentRun] = []
    scripts: Deque[Tuple[Value, ...]] = deque([()])
    while scripts:
        script = scripts.popleft()
        context = HandlerContext(
            actor=actor_def,
            now=now,
            sender=sender,
            served_arrival=served_arrival,
            variables=dict(variables),
            locals_=dict(locals_),
            script=script,
        )
        try:
            delay = segment(context)
        except BranchPoint as branch_point:
            scripts.extend(script + (option,) for option in branch_point.options)
            continue
        except AssertionViolated as violated:
            runs.append(
                _SegmentRun(
                    context.variables, context.locals, context.log, None, violated.description
                )
            )
            continue
        runs.append(_SegmentRun(context.variables, context.locals, context.log, delay))
    return runs


def _apply_log(
    model: ActorModel,
    branch: _Branch,
    index: int,
    now: int,
    log: List[LogEntry],
) -> None:
    actor_id = model.actors[index].actor_id
    for entry in log:
        if isinstance(entry, ChoiceRecord):
            branch.events.append(
                TraceEvent(now, actor_id, TraceAction.CHOOSE, entry.name, entry.value)
            )
            continue
        send = entry
        branch.events.append(TraceEvent(now, actor_id, TraceAction.SEND, send.describe()))
        if not _deliver(model, branch, actor_id, now, send):
            branch.events.append(
                TraceEvent(
                    now,
                    send.target,
                    TraceAction.VIOLATION,
                    f"queue overflow: {send.describe()} exceeds capacity "
                    f"{model.actor(send.target).capacity}",
                )
            )
            branch.violation = VerdictKind.QUEUE_OVERFLOW
            return


def _deliver(
    model: ActorModel, branch: _Branch, sender: str, now: int, send: PendingSend
) -> bool:
    """Кладёт сообщение в очередь адресата; False при переполнении."""

    target_index = model.index_of(send.target)
    model.handler(send.target, send.handler)
    target = branch.actors[target_index]
    if len(target.bag) >= model.actors[target_index].capacity:
        return False
    message = MessageInstance(
        target=send.target,
        handler=send.handler,
        payload=send.payload,
        sender=sender,
        send_time=now,
        arrival_time=now + send.after,
        deadline=None if send.deadline is None else now + send.deadline,
    )
    bag = sorted(target.bag + (message,), key=MessageInstance.sort_key)
    branch.actors[target_index] = replace(target, bag=tuple(bag))
    return True
