"""Описание акторной модели: классы акторов, обработчики и контекст их выполнения.

Обработчик задаётся последовательностью сегментов. Сегмент - функция
``(ctx) -> Delay | None``: он выполняется атомарно в нулевое время, а возврат
``Delay`` приостанавливает актор до ``now + d`` для каждого ``d`` из набора.
Недетерминированное присваивание оформляется вызовом ``ctx.choose``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from src.kernel.exceptions import ModelDefinitionError
from src.kernel.state import ActorSnapshot, MessageInstance, Payload, TimedState, Value


@dataclass(frozen=True, slots=True)
class Delay:
    """Недетерминированная задержка: по ветви на каждый элемент choices."""

    choices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.choices:
            raise ModelDefinitionError("delay needs at least one duration")
        if any(value < 0 for value in self.choices):
            raise ModelDefinitionError("delay durations must be ≥ 0", choices=self.choices)


Segment = Callable[["HandlerContext"], Optional[Delay]]


@dataclass(frozen=True, slots=True)
class HandlerDef:
    name: str
    segments: Tuple[Segment, ...]
    params: Tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class InitialMessage:
    """Сообщение, отправляемое конструктором актора самому себе в момент 0."""

    handler: str
    payload: Payload = ()
    after: int = 0
    deadline: Optional[int] = None


@dataclass(frozen=True, slots=True, eq=False)
class ActorDef:
    actor_id: str
    class_name: str
    capacity: int
    variables: Tuple[Tuple[str, Value], ...] = ()
    handlers: Mapping[str, HandlerDef] = field(default_factory=dict)
    constants: Mapping[str, Any] = field(default_factory=dict)
    initial_messages: Tuple[InitialMessage, ...] = ()


class ActorModel:
    """Набор экземпляров акторов; порядок объявления задаёт порядок срабатывания в раунде."""

    def __init__(self, actors: Sequence[ActorDef]) -> None:
        self.actors: Tuple[ActorDef, ...] = tuple(actors)
        self._index: Dict[str, int] = {}
        for position, actor in enumerate(self.actors):
            if actor.actor_id in self._index:
                raise ModelDefinitionError("duplicate actor id", actor=actor.actor_id)
            self._index[actor.actor_id] = position
        self._check()

    def _check(self) -> None:
        for actor in self.actors:
            if actor.capacity < 1:
                raise ModelDefinitionError("capacity must be ≥ 1", actor=actor.actor_id)
            if len(actor.initial_messages) > actor.capacity:
                raise ModelDefinitionError("initial messages exceed capacity", actor=actor.actor_id)
            for message in actor.initial_messages:
                self.handler(actor.actor_id, message.handler)
                if message.after < 0:
                    raise ModelDefinitionError("negative after", actor=actor.actor_id)

    def index_of(self, actor_id: str) -> int:
        try:
            return self._index[actor_id]
        except KeyError:
            raise ModelDefinitionError("unknown actor", actor=actor_id) from None

    def actor(self, actor_id: str) -> ActorDef:
        return self.actors[self.index_of(actor_id)]

    def handler(self, actor_id: str, name: str) -> HandlerDef:
        actor = self.actor(actor_id)
        try:
            return actor.handlers[name]
        except KeyError:
            raise ModelDefinitionError(
                "unknown handler", actor=actor_id, handler=name
            ) from None

    def initial_state(self) -> TimedState:
        snapshots = []
        for actor in self.actors:
            bag = tuple(
                sorted(
                    (
                        MessageInstance(
                            target=actor.actor_id,
                            handler=message.handler,
                            payload=message.payload,
                            sender=actor.actor_id,
                            send_time=0,
                            arrival_time=message.after,
                            deadline=message.deadline,
                        )
                        for message in actor.initial_messages
                    ),
                    key=MessageInstance.sort_key,
                )
            )
            snapshots.append(
                ActorSnapshot(actor_id=actor.actor_id, variables=actor.variables, bag=bag)
            )
        return TimedState(now=0, actors=tuple(snapshots))

    def describe(self) -> List[Dict[str, Any]]:
        """Описание экземпляров для вывода dump-network."""

        return [
            {
                "id": actor.actor_id,
                "class": actor.class_name,
                "capacity": actor.capacity,
                "variables": {name: value for name, value in actor.variables},
                "constants": dict(actor.constants),
                "handlers": sorted(actor.handlers),
                "initial_messages": [
                    {
                        "handler": message.handler,
                        "payload": list(message.payload),
                        "after": message.after,
                        "deadline": message.deadline,
                    }
                    for message in actor.initial_messages
                ],
            }
            for actor in self.actors
        ]


# ------------------------------------------------------------ handler context --
class BranchPoint(Exception):
    """Внутренний сигнал: сегмент дошёл до ещё не выбранного ветвления."""

    def __init__(self, name: str, options: Tuple[Value, ...]) -> None:
        super().__init__(name)
        self.name = name
        self.options = options


class AssertionViolated(Exception):
    """Внутренний сигнал: assertion в обработчике не выполнен."""

    def __init__(self, description: str) -> None:
        super().__init__(description)
        self.description = description


@dataclass(frozen=True, slots=True)
class PendingSend:
    target: str
    handler: str
    payload: Payload
    after: int
    deadline: Optional[int]

    def describe(self) -> str:
        args = ", ".join(repr(value) for value in self.payload)
        text = f"{self.target}.{self.handler}({args})"
        if self.after:
            text += f" after({self.after})"
        if self.deadline is not None:
            text += f" deadline({self.deadline})"
        return text


@dataclass(frozen=True, slots=True)
class ChoiceRecord:
    name: str
    value: Value


LogEntry = Union[ChoiceRecord, PendingSend]


class HandlerContext:
    """Доступ сегмента к переменным актора, локальным значениям и эффектам."""

    def __init__(
        self,
        *,
        actor: ActorDef,
        now: int,
        sender: str,
        served_arrival: int,
        variables: Dict[str, Value],
        locals_: Dict[str, Value],
        script: Sequence[Value] = (),
    ) -> None:
        self._actor = actor
        self._now = now
        self._sender = sender
        self._served_arrival = served_arrival
        self.variables = variables
        self.locals = locals_
        self._script = script
        self._cursor = 0
        self.log: List[LogEntry] = []

    @property
    def now(self) -> int:
        return self._now

    @property
    def self_id(self) -> str:
        return self._actor.actor_id

    @property
    def sender(self) -> str:
        return self._sender

    @property
    def waiting_time(self) -> int:
        """currentMessageWaitingTime: сколько обслуживаемое сообщение ждало в очереди."""

        return self._now - self._served_arrival

    def env(self, name: str) -> Any:
        try:
            return self._actor.constants[name]
        except KeyError:
            raise ModelDefinitionError(
                "unknown constant", actor=self._actor.actor_id, constant=name
            ) from None

    def __getitem__(self, name: str) -> Value:
        try:
            return self.variables[name]
        except KeyError:
            raise ModelDefinitionError(
                "unknown state variable", actor=self._actor.actor_id, variable=name
            ) from None

    def __setitem__(self, name: str, value: Value) -> None:
        if name not in self.variables:
            raise ModelDefinitionError(
                "unknown state variable", actor=self._actor.actor_id, variable=name
            )
        self.variables[name] = value

    def choose(self, name: str, options: Sequence[Value]) -> Value:
        """Недетерминированное присваивание: по ветви на каждый вариант."""

        choices = tuple(options)
        if not choices:
            raise ModelDefinitionError("empty choice set", actor=self._actor.actor_id, name=name)
        if len(choices) == 1:
            value = choices[0]
        elif self._cursor < len(self._script):
            value = self._script[self._cursor]
            self._cursor += 1
        else:
            raise BranchPoint(name, choices)
        self.log.append(ChoiceRecord(name, value))
        return value

    def send(
        self,
        target: str,
        handler: str,
        *payload: Value,
        after: int = 0,
        deadline: Optional[int] = None,
    ) -> None:
        if after < 0:
            raise ModelDefinitionError("negative after", actor=self._actor.actor_id, after=after)
        self.log.append(PendingSend(target, handler, tuple(payload), after, deadline))

    def assertion(self, condition: bool, description: str) -> None:
        if not condition:
            raise AssertionViolated(description)
