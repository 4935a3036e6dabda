"""Программы обработчиков акторов узла WSAN: Sensor, Misc, CPU, Ether и RCD.

Обработчики - функции уровня модуля, параметры конкретной сети приходят через
``ctx.env``. Поэтому акторы Sensor, Misc и CPU не зависят от выбранного протокола.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence, Tuple

from src.kernel.exceptions import ModelDefinitionError
from src.kernel.model import ActorDef, Delay, HandlerContext, HandlerDef, InitialMessage
from src.kernel.state import Value
from src.model.params import TaskParams

MEDIUM = "medium"
CPU = "cpu"
SENSOR = "sensor"
MISC = "misc"
SENDER = "sender"
RECEIVER = "receiver"

SENSOR_CAPACITY = 2
CPU_CAPACITY = 10
MISC_CAPACITY = 2
MEDIUM_CAPACITY = 5
RCD_CAPACITY = 10

# Размер пакета, который CPU передаёт радио (число пакетов в одной отправке).
PACKETS_PER_SEND = 1


class PacketRelease(str, Enum):
    """Когда радио TDMA перестаёт считать пакет ожидающим отправки."""

    HANDOFF = "handoff"
    COMPLETION = "completion"


def _as_int(value: Value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelDefinitionError("expected an integer value", name=name, value=value)
    return value


def _as_actor(value: Value, name: str) -> str:
    if not isinstance(value, str):
        raise ModelDefinitionError("expected an actor reference", name=name, value=value)
    return value


def _span(low: int, high: int) -> Tuple[int, ...]:
    return tuple(range(low, high + 1))


# ------------------------------------------------------------------ Sensor --
def _sensor_loop(ctx: HandlerContext) -> Optional[Delay]:
    period = ctx.env("period")
    ctx.send(ctx.env("cpu"), "sensorEvent", deadline=period)
    ctx.send(ctx.self_id, "sensorLoop", after=period)
    return None


def sensor_actor(params: TaskParams) -> ActorDef:
    return ActorDef(
        actor_id=SENSOR,
        class_name="Sensor",
        capacity=SENSOR_CAPACITY,
        handlers={"sensorLoop": HandlerDef("sensorLoop", (_sensor_loop,))},
        constants={"period": params.require_period(), "cpu": CPU},
        initial_messages=(InitialMessage("sensorLoop"),),
    )


# -------------------------------------------------------------------- Misc --
def _misc_loop(ctx: HandlerContext) -> Optional[Delay]:
    period = ctx.env("period")
    ctx.send(ctx.env("cpu"), "miscEvent", deadline=period)
    ctx.send(ctx.self_id, "miscLoop", after=period)
    return None


def misc_actor(params: TaskParams, offset: int = 0) -> ActorDef:
    return ActorDef(
        actor_id=MISC,
        class_name="Misc",
        capacity=MISC_CAPACITY,
        handlers={"miscLoop": HandlerDef("miscLoop", (_misc_loop,))},
        constants={"period": params.misc_period, "cpu": CPU},
        initial_messages=(InitialMessage("miscLoop", after=offset),),
    )


# --------------------------------------------------------------------- CPU --
def _misc_event(ctx: HandlerContext) -> Optional[Delay]:
    return Delay(_span(1, ctx.env("misc_wcet")))


def _sensor_event_compute(ctx: HandlerContext) -> Optional[Delay]:
    return Delay(_span(1, ctx.env("sensor_wcet")))


def _sensor_event_collect(ctx: HandlerContext) -> Optional[Delay]:
    collected = _as_int(ctx["collected_samples"], "collected_samples") + 1
    if collected == ctx.env("buffer_size"):
        ctx.send(ctx.env("sender_device"), "send", ctx.env("receiver_device"), PACKETS_PER_SEND)
        collected = 0
    ctx["collected_samples"] = collected
    return None


def cpu_actor(params: TaskParams) -> ActorDef:
    return ActorDef(
        actor_id=CPU,
        class_name="CPU",
        capacity=CPU_CAPACITY,
        variables=(("collected_samples", 0),),
        handlers={
            "miscEvent": HandlerDef("miscEvent", (_misc_event,)),
            "sensorEvent": HandlerDef(
                "sensorEvent", (_sensor_event_compute, _sensor_event_collect)
            ),
        },
        constants={
            "misc_wcet": params.misc_wcet,
            "sensor_wcet": params.sensor_wcet,
            "buffer_size": params.buffer_size,
            "sender_device": SENDER,
            "receiver_device": RECEIVER,
        },
    )


# ------------------------------------------------------------------- Ether --
def _get_status(ctx: HandlerContext) -> Optional[Delay]:
    ctx.send(ctx.sender, "receiveStatus", ctx["receiver_dev"] is not None)
    return None


def _broadcast(ctx: HandlerContext) -> Optional[Delay]:
    receiver = _as_actor(ctx.locals["receiver"], "receiver")
    packets = _as_int(ctx.locals["packets"], "packets")
    if ctx["sender_dev"] is not None:
        # Среда занята: коллизия
        ctx.send(ctx.sender, "receiveResult", False)
        return None

    one_packet = _as_int(ctx.choose("OnePacketTT", ctx.env("packet_tx_times")), "OnePacketTT")
    duration = packets * one_packet
    ctx["sender_dev"] = ctx.sender
    ctx["receiver_dev"] = receiver
    ctx.send(ctx.self_id, "broadcastingIsCompleted", after=duration)
    ctx.send(ctx.sender, "receiveResult", True, after=duration)
    ctx.send(receiver, "receiveData", receiver, packets)
    return None


def _broadcasting_is_completed(ctx: HandlerContext) -> Optional[Delay]:
    ctx["sender_dev"] = None
    ctx["receiver_dev"] = None
    return None


def ether_actor(params: TaskParams) -> ActorDef:
    return ActorDef(
        actor_id=MEDIUM,
        class_name="Ether",
        capacity=MEDIUM_CAPACITY,
        variables=(("sender_dev", None), ("receiver_dev", None)),
        handlers={
            "getStatus": HandlerDef("getStatus", (_get_status,)),
            "broadcast": HandlerDef("broadcast", (_broadcast,), ("receiver", "packets")),
            "broadcastingIsCompleted": HandlerDef(
                "broadcastingIsCompleted", (_broadcasting_is_completed,)
            ),
        },
        constants={"packet_tx_times": params.packet_tx_times},
    )


# ---------------------------------------------------------------- RCD TDMA --
def _receive_data(ctx: HandlerContext) -> Optional[Delay]:
    return None


def _tdma_send(ctx: HandlerContext) -> Optional[Delay]:
    ctx.assertion(ctx["receiver_device"] is None, "receiverDevice == null")
    ctx["receiver_device"] = _as_actor(ctx.locals["receiver"], "receiver")
    ctx["sending_data"] = _as_int(ctx.locals["data"], "data")
    ctx.send(ctx.self_id, "checkPendingData")
    return None


def _handle_tdma_slot(ctx: HandlerContext) -> Optional[Delay]:
    active = not ctx["in_active_period"]
    ctx["in_active_period"] = active
    slot_size = _as_int(ctx.env("slot_size"), "slot_size")
    if active:
        remained = slot_size - ctx.waiting_time
        ctx.assertion(remained > 0, "remainedTime > 0")
        ctx.send(ctx.self_id, "checkPendingData")
        ctx.send(ctx.self_id, "handleTDMASlot", after=remained)
    else:
        foreign = slot_size * (_as_int(ctx.env("number_of_nodes"), "number_of_nodes") - 1)
        ctx.send(ctx.self_id, "handleTDMASlot", after=foreign - ctx.waiting_time)
    return None


def _check_pending_data(ctx: HandlerContext) -> Optional[Delay]:
    receiver = ctx["receiver_device"]
    if not ctx["in_active_period"] or receiver is None or ctx["busy_with_sending"]:
        return None
    data = ctx["sending_data"]
    ctx.send(ctx.env("medium"), "broadcast", receiver, data)
    ctx["busy_with_sending"] = True
    if ctx.env("packet_release") == PacketRelease.HANDOFF.value:
        ctx["in_flight_receiver"] = receiver
        ctx["in_flight_data"] = data
        ctx["receiver_device"] = None
        ctx["sending_data"] = 0
    return None


def _tdma_receive_result(ctx: HandlerContext) -> Optional[Delay]:
    ctx["busy_with_sending"] = False
    handoff = ctx.env("packet_release") == PacketRelease.HANDOFF.value
    if ctx.locals["result"]:
        if not handoff:
            ctx["receiver_device"] = None
            ctx["sending_data"] = 0
    elif handoff and ctx["receiver_device"] is None:
        # Коллизия: пакет возвращается в очередь на отправку
        ctx["receiver_device"] = ctx["in_flight_receiver"]
        ctx["sending_data"] = ctx["in_flight_data"]
    ctx["in_flight_receiver"] = None
    ctx["in_flight_data"] = 0
    ctx.send(ctx.self_id, "checkPendingData")
    return None


def tdma_rcd_actor(
    actor_id: str,
    *,
    slot_size: int,
    number_of_nodes: int,
    packet_release: PacketRelease,
    slot_offset: Optional[int] = None,
) -> ActorDef:
    """Радио с TDMA; ``slot_offset`` задаёт начало собственного слота (None - слота нет)."""

    initial: Tuple[InitialMessage, ...] = ()
    if slot_offset is not None:
        initial = (InitialMessage("handleTDMASlot", after=slot_offset),)
    return ActorDef(
        actor_id=actor_id,
        class_name="RCD",
        capacity=RCD_CAPACITY,
        variables=(
            ("receiver_device", None),
            ("sending_data", 0),
            ("in_active_period", False),
            ("busy_with_sending", False),
            ("in_flight_receiver", None),
            ("in_flight_data", 0),
        ),
        handlers={
            "send": HandlerDef("send", (_tdma_send,), ("receiver", "data")),
            "handleTDMASlot": HandlerDef("handleTDMASlot", (_handle_tdma_slot,)),
            "checkPendingData": HandlerDef("checkPendingData", (_check_pending_data,)),
            "receiveResult": HandlerDef("receiveResult", (_tdma_receive_result,), ("result",)),
            "receiveData": HandlerDef("receiveData", (_receive_data,), ("receiver", "packets")),
        },
        constants={
            "medium": MEDIUM,
            "slot_size": slot_size,
            "number_of_nodes": number_of_nodes,
            "packet_release": packet_release.value,
        },
        initial_messages=initial,
    )


# --------------------------------------------------------------- RCD B-MAC --
def _bmac_send(ctx: HandlerContext) -> Optional[Delay]:
    ctx.assertion(ctx["receiver_device"] is None, "receiverDevice == null")
    ctx["receiver_device"] = _as_actor(ctx.locals["receiver"], "receiver")
    ctx["sending_data"] = _as_int(ctx.locals["data"], "data")
    ctx.send(ctx.env("medium"), "getStatus")
    return None


def _one_packet_time(ctx: HandlerContext) -> int:
    tx_times: Sequence[int] = ctx.env("packet_tx_times")
    return _as_int(ctx.choose("OnePacketTT", tx_times), "OnePacketTT")


def _bmac_receive_status(ctx: HandlerContext) -> Optional[Delay]:
    one_packet = _one_packet_time(ctx)
    if ctx.locals["busy"]:
        ctx.send(ctx.env("medium"), "getStatus", after=one_packet)
        return None
    packets = _as_int(ctx["sending_data"], "sending_data")
    ctx.send(ctx.env("medium"), "broadcast", ctx["receiver_device"], packets)
    return Delay((one_packet * packets,))


def _bmac_receive_result(ctx: HandlerContext) -> Optional[Delay]:
    if ctx.locals["result"]:
        ctx["receiver_device"] = None
        ctx["sending_data"] = 0
        return None
    # Коллизия: отправка начинается заново с опроса канала
    ctx.send(ctx.env("medium"), "getStatus", after=_one_packet_time(ctx))
    return None


def bmac_rcd_actor(actor_id: str, params: TaskParams) -> ActorDef:
    return ActorDef(
        actor_id=actor_id,
        class_name="RCD",
        capacity=RCD_CAPACITY,
        variables=(("receiver_device", None), ("sending_data", 0)),
        handlers={
            "send": HandlerDef("send", (_bmac_send,), ("receiver", "data")),
            "receiveStatus": HandlerDef("receiveStatus", (_bmac_receive_status,), ("busy",)),
            "receiveResult": HandlerDef("receiveResult", (_bmac_receive_result,), ("result",)),
            "receiveData": HandlerDef("receiveData", (_receive_data,), ("receiver", "packets")),
        },
        constants={"medium": MEDIUM, "packet_tx_times": params.packet_tx_times},
    )
