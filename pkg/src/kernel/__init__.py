"""Ядро: временные акторы с after/deadline/delay и явный перебор состояний."""

from src.kernel.exceptions import (
    ExplorationLimitExceeded,
    KernelError,
    ModelDefinitionError,
    ReplayDivergence,
    TraceFormatError,
)
from src.kernel.explorer import ExplorationLimits, ExplorerOptions, FrontierOrder, explore
from src.kernel.model import ActorDef, ActorModel, Delay, HandlerContext, HandlerDef, InitialMessage
from src.kernel.replay import replay
from src.kernel.semantics import SemanticsOptions, Transition, advance_and_fire
from src.kernel.state import (
    ActorSnapshot,
    Continuation,
    MessageInstance,
    TimedState,
    canonicalize,
    next_event_time,
    shift,
)
from src.kernel.trace import TraceAction, TraceEvent, read_trace, write_trace
from src.kernel.verdict import Verdict, VerdictKind, write_verdict_summary

__all__ = [
    "ActorDef",
    "ActorModel",
    "ActorSnapshot",
    "Continuation",
    "Delay",
    "ExplorationLimitExceeded",
    "ExplorationLimits",
    "ExplorerOptions",
    "FrontierOrder",
    "HandlerContext",
    "HandlerDef",
    "InitialMessage",
    "KernelError",
    "MessageInstance",
    "ModelDefinitionError",
    "ReplayDivergence",
    "SemanticsOptions",
    "TimedState",
    "TraceAction",
    "TraceEvent",
    "TraceFormatError",
    "Transition",
    "Verdict",
    "VerdictKind",
    "advance_and_fire",
    "canonicalize",
    "explore",
    "next_event_time",
    "read_trace",
    "replay",
    "shift",
    "write_trace",
    "write_verdict_summary",
]
