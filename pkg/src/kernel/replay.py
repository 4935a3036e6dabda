"""Детерминированный повтор трассы контрпримера."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from src.kernel.exceptions import ReplayDivergence
from src.kernel.model import ActorModel
from src.kernel.semantics import SemanticsOptions, Transition, advance_and_fire
from src.kernel.state import TimedState, canonicalize_with_offset
from src.kernel.trace import TraceEvent

LOGGER = logging.getLogger(__name__)


def replay(
    model: ActorModel,
    trace: Sequence[TraceEvent],
    *,
    initial: Optional[TimedState] = None,
    options: SemanticsOptions = SemanticsOptions(),
) -> bool:
    """Повторяет записанные выборы; True, если записанное нарушение воспроизведено.

    На каждом шаге ищется ветвь раунда, чьи события совпадают с началом
    оставшейся трассы. Пустая трасса воспроизводится тривиально.
    """

    if not trace:
        return True

    state, offset = canonicalize_with_offset(initial or model.initial_state())
    position = 0
    while position < len(trace):
        transitions = advance_and_fire(model, state, options)
        if not transitions:
            raise ReplayDivergence(position, trace[position], "model is quiescent")

        matched: Optional[Transition] = None
        longest = 0
        for transition in transitions:
            events = [event.shifted(offset) for event in transition.events]
            common = _common_prefix(events, trace[position:])
            if common == len(events):
                matched = transition
                break
            longest = max(longest, common)

        if matched is None:
            index = position + longest
            event = trace[index] if index < len(trace) else None
            raise ReplayDivergence(index, event, "no successor matches the recorded event")

        position += len(matched.events)
        if matched.violation is not None:
            reproduced = position == len(trace)
            LOGGER.info(
                "Replay reached %s at event #%d (reproduced=%s)",
                matched.violation.value,
                position,
                reproduced,
            )
            return reproduced
        assert matched.state is not None
        state, shift = canonicalize_with_offset(matched.state)
        offset += shift

    LOGGER.warning("Replay consumed the whole trace without reaching a violation")
    return False


def _common_prefix(left: Sequence[TraceEvent], right: Sequence[TraceEvent]) -> int:
    count = 0
    for first, second in zip(left, right):
        if first != second:
            break
        count += 1
    return count
