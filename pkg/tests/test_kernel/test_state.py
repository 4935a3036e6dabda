"""Тесты снимков состояния, канонизации и выбора момента следующего события."""

from __future__ import annotations

import random

from src.kernel.state import (
    ActorSnapshot,
    Continuation,
    MessageInstance,
    TimedState,
    canonicalize,
    canonicalize_with_offset,
    next_event_time,
    shift,
    stored_times,
)


def _message(
    arrival: int, *, send: int | None = None, deadline: int | None = None
) -> MessageInstance:
    sent = arrival if send is None else send
    return MessageInstance("a", "run", (), "a", sent, arrival, deadline)


def _busy(actor_id: str, until: int, served: int) -> ActorSnapshot:
    return ActorSnapshot(
        actor_id,
        (),
        busy_until=until,
        continuation=Continuation("run", 1, (), served, actor_id),
    )


# ----------------------------------------------------------- next event time --
def test_next_event_is_earliest_arrival() -> None:
    state = TimedState(0, (ActorSnapshot("a", (), bag=(_message(5, send=0), _message(7, send=0))),))
    assert next_event_time(state) == 5


def test_next_event_prefers_continuation() -> None:
    state = TimedState(
        0,
        (
            _busy("a", 4, 0),
            ActorSnapshot("b", (), bag=(_message(9, send=0),)),
        ),
    )
    assert next_event_time(state) == 4


def test_quiescent_state_has_no_next_event() -> None:
    assert next_event_time(TimedState(3, (ActorSnapshot("a", ()),))) is None


def test_busy_actor_messages_only_watched_for_deadlines() -> None:
    busy = ActorSnapshot(
        "a",
        (),
        busy_until=20,
        continuation=Continuation("run", 1, (), 0, "a"),
        bag=(_message(2, send=0, deadline=11),),
    )
    state = TimedState(0, (busy,))
    assert next_event_time(state) == 11
    assert next_event_time(state, deadline_inclusive=True) == 12


def test_next_event_never_in_the_past() -> None:
    state = TimedState(8, (ActorSnapshot("a", (), bag=(_message(3, send=0),)),))
    assert next_event_time(state) == 8


# ---------------------------------------------------------- canonicalization --
def test_canonicalize_subtracts_minimum() -> None:
    state = TimedState(
        5,
        (
            _busy("a", 6, 5),
            ActorSnapshot("b", (), bag=(_message(5), _message(7, send=5))),
        ),
    )
    canonical, offset = canonicalize_with_offset(state)
    assert offset == 5
    assert canonical.now == 0
    assert [message.arrival_time for message in canonical.actor("b").bag] == [0, 2]
    assert canonical.actor("a").busy_until == 1
    assert min(stored_times(canonical)) == 0


def test_canonicalize_is_idempotent() -> None:
    state = TimedState(0, (ActorSnapshot("a", (("x", 1),), bag=(_message(4, send=0),)),))
    assert canonicalize(state) == state
    assert canonicalize(canonicalize(state)) == canonicalize(state)


def _random_state(rng: random.Random) -> TimedState:
    now = rng.randint(0, 50)
    actors = []
    for index in range(rng.randint(1, 4)):
        actor_id = f"actor{index}"
        bag = []
        for _ in range(rng.randint(0, 3)):
            send = rng.randint(max(0, now - 20), now)
            arrival = send + rng.randint(0, 30)
            deadline = send + rng.randint(1, 30) if rng.random() < 0.5 else None
            payload = (rng.randint(0, 3),)
            bag.append(MessageInstance(actor_id, "run", payload, "x", send, arrival, deadline))
        busy = rng.random() < 0.5
        actors.append(
            ActorSnapshot(
                actor_id,
                (("flag", rng.random() < 0.5), ("count", rng.randint(0, 5))),
                busy_until=now + rng.randint(0, 10) if busy else None,
                continuation=(
                    Continuation("run", 1, (), rng.randint(max(0, now - 10), now), "x")
                    if busy
                    else None
                ),
                bag=tuple(sorted(bag, key=MessageInstance.sort_key)),
            )
        )
    return TimedState(now, tuple(actors))


def test_shift_invariance_on_random_states() -> None:
    rng = random.Random(42)
    for _ in range(1000):
        state = _random_state(rng)
        delta = rng.randint(1, 500)
        assert canonicalize(shift(state, delta)) == canonicalize(state)


def test_valuation_difference_survives_canonicalization() -> None:
    rng = random.Random(43)
    for _ in range(200):
        state = _random_state(rng)
        first = state.actors[0]
        count = first.variable("count")
        assert isinstance(count, int)
        changed = TimedState(
            state.now,
            (
                ActorSnapshot(
                    first.actor_id,
                    (("flag", first.variable("flag")), ("count", count + 1)),
                    first.busy_until,
                    first.continuation,
                    first.bag,
                ),
            )
            + state.actors[1:],
        )
        assert canonicalize(changed) != canonicalize(state)
