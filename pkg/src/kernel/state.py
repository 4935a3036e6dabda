"""Снимки состояния сети акторов и канонизация сдвигом времени."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Optional, Tuple, Union

Value = Union[int, bool, str, None]
Payload = Tuple[Value, ...]
Valuation = Tuple[Tuple[str, Value], ...]


@dataclass(frozen=True, slots=True)
class MessageInstance:
    """Сообщение в очереди актора (все времена абсолютные в кадре состояния)."""

    target: str
    handler: str
    payload: Payload
    sender: str
    send_time: int
    arrival_time: int
    deadline: Optional[int] = None

    def sort_key(self) -> Tuple[int, str, str, str, int, int]:
        return (
            self.arrival_time,
            self.handler,
            self.sender,
            repr(self.payload),
            self.send_time,
            -1 if self.deadline is None else self.deadline,
        )

    def shifted(self, delta: int) -> "MessageInstance":
        return replace(
            self,
            send_time=self.send_time + delta,
            arrival_time=self.arrival_time + delta,
            deadline=None if self.deadline is None else self.deadline + delta,
        )

    def describe(self) -> str:
        args = ", ".join(repr(value) for value in self.payload)
        return f"{self.handler}({args}) from {self.sender}"


@dataclass(frozen=True, slots=True)
class Continuation:
    """Приостановленный на delay обработчик."""

    handler: str
    resume_at: int
    locals: Valuation
    served_arrival: int
    sender: str


@dataclass(frozen=True, slots=True)
class ActorSnapshot:
    actor_id: str
    variables: Valuation
    busy_until: Optional[int] = None
    continuation: Optional[Continuation] = None
    bag: Tuple[MessageInstance, ...] = ()

    @property
    def idle(self) -> bool:
        return self.continuation is None

    def variable(self, name: str) -> Value:
        for key, value in self.variables:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True, slots=True)
class TimedState:
    now: int
    actors: Tuple[ActorSnapshot, ...]

    def actor(self, actor_id: str) -> ActorSnapshot:
        for snapshot in self.actors:
            if snapshot.actor_id == actor_id:
                return snapshot
        raise KeyError(actor_id)


def stored_times(state: TimedState) -> Iterator[int]:
    """Все моменты времени, хранящиеся в состоянии."""

    yield state.now
    for actor in state.actors:
        if actor.busy_until is not None:
            yield actor.busy_until
        if actor.continuation is not None:
            yield actor.continuation.served_arrival
        for message in actor.bag:
            yield message.send_time
            yield message.arrival_time
            if message.deadline is not None:
                yield message.deadline


def shift(state: TimedState, delta: int) -> TimedState:
    """Сдвигает все хранимые моменты времени на delta."""

    if delta == 0:
        return state
    actors = []
    for actor in state.actors:
        continuation = actor.continuation
        if continuation is not None:
            continuation = replace(continuation, served_arrival=continuation.served_arrival + delta)
        actors.append(
            replace(
                actor,
                busy_until=None if actor.busy_until is None else actor.busy_until + delta,
                continuation=continuation,
                bag=tuple(message.shifted(delta) for message in actor.bag),
            )
        )
    return TimedState(now=state.now + delta, actors=tuple(actors))


def canonicalize_with_offset(state: TimedState) -> Tuple[TimedState, int]:
    """Канонизирует состояние и возвращает вычтенное смещение."""

    offset = min(stored_times(state))
    return shift(state, -offset), offset


def canonicalize(state: TimedState) -> TimedState:
    """Вычитает минимум хранимых времён, так что наименьшее время становится 0."""

    return canonicalize_with_offset(state)[0]


def next_event_time(state: TimedState, *, deadline_inclusive: bool = False) -> Optional[int]:
    """Момент следующего события или None для покоящейся модели.

    Кандидаты: прибытия сообщений свободных акторов, окончания delay и моменты
    контроля дедлайнов ожидающих сообщений. Результат не меньше ``state.now``.
    """

    candidates = []
    for actor in state.actors:
        if actor.continuation is not None and actor.busy_until is not None:
            candidates.append(actor.busy_until)
        elif actor.continuation is None:
            candidates.extend(message.arrival_time for message in actor.bag)
        for message in actor.bag:
            if message.deadline is not None:
                candidates.append(message.deadline + (1 if deadline_inclusive else 0))
    if not candidates:
        return None
    return max(state.now, min(candidates))


def deadline_expired(message: MessageInstance, now: int, *, inclusive: bool = False) -> bool:
    """Пропущен ли дедлайн сообщения, если оно ещё не взято в момент now."""

    if message.deadline is None:
        return False
    return message.deadline < now if inclusive else message.deadline <= now
