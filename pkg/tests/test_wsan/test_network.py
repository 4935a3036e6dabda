"""Тесты сборки сети WSAN и проверки планируемости на малых конфигурациях."""

from __future__ import annotations

import json

import pytest

from src.kernel.explorer import ExplorerOptions
from src.kernel.verdict import VerdictKind
from src.model.params import MediumProtocol, TaskParams
from src.wsan.actors import PacketRelease
from src.wsan.exceptions import NetworkConfigurationError
from src.wsan.network import NetworkGeometry, build_network, check_schedulability

BASELINE = TaskParams(sensor_period=11)
FAIL_FAST = ExplorerOptions(stop_at_first_violation=True)


def test_tdma_network_layout() -> None:
    network, initial = build_network(BASELINE, MediumProtocol.TDMA)

    assert [actor.actor_id for actor in network.model.actors] == [
        "medium",
        "cpu",
        "sensor",
        "misc",
        "sender",
        "receiver",
    ]
    assert [actor.capacity for actor in network.model.actors] == [5, 10, 2, 2, 10, 10]
    pending = [
        (actor.actor_id, message.handler) for actor in initial.actors for message in actor.bag
    ]
    assert sorted(pending) == [
        ("misc", "miscLoop"),
        ("sender", "handleTDMASlot"),
        ("sensor", "sensorLoop"),
    ]
    assert all(message.arrival_time == 0 for actor in initial.actors for message in actor.bag)
    assert network.geometry.slot_size == 5


def test_bmac_network_has_no_slot_bootstrap() -> None:
    network, initial = build_network(BASELINE, MediumProtocol.BMAC)
    handlers = {message.handler for actor in initial.actors for message in actor.bag}
    assert handlers == {"sensorLoop", "miscLoop"}
    assert "handleTDMASlot" not in network.actor("sender").handlers


@pytest.mark.parametrize("actor_id", ["cpu", "sensor", "misc", "medium"])
def test_protocol_swap_keeps_node_actors(actor_id: str) -> None:
    tdma, _ = build_network(BASELINE, MediumProtocol.TDMA)
    bmac, _ = build_network(BASELINE, MediumProtocol.BMAC)
    left, right = tdma.actor(actor_id), bmac.actor(actor_id)

    assert left.handlers == right.handlers
    assert left.constants == right.constants
    assert left.variables == right.variables
    assert left.capacity == right.capacity
    assert left.initial_messages == right.initial_messages


def test_explicit_geometry_is_valid() -> None:
    network, _ = build_network(BASELINE, geometry=NetworkGeometry(number_of_nodes=2, slot_size=5))
    assert network.geometry.to_dict()["slot_size"] == 5


@pytest.mark.parametrize(
    "params, geometry",
    [
        (BASELINE, NetworkGeometry(slot_size=4)),
        (TaskParams(sensor_period=11, tdma_superframe=9), NetworkGeometry()),
        (BASELINE, NetworkGeometry(slot_offset=10)),
        (BASELINE, NetworkGeometry(misc_offset=-1)),
        (BASELINE, NetworkGeometry(number_of_nodes=0)),
        (TaskParams(), NetworkGeometry()),
        (TaskParams(sensor_period=11, buffer_size=0), NetworkGeometry()),
    ],
)
def test_invalid_configurations_rejected(params: TaskParams, geometry: NetworkGeometry) -> None:
    with pytest.raises(NetworkConfigurationError):
        build_network(params, MediumProtocol.TDMA, geometry)


def test_bmac_ignores_slot_geometry(caplog: pytest.LogCaptureFixture) -> None:
    build_network(BASELINE, MediumProtocol.BMAC, NetworkGeometry(slot_offset=3))
    assert "ignored" in caplog.text


def test_offsets_move_initial_messages() -> None:
    geometry = NetworkGeometry(slot_offset=5, misc_offset=7)
    _, initial = build_network(BASELINE, geometry=geometry)
    assert [message.arrival_time for message in initial.actor("sender").bag] == [5]
    assert [message.arrival_time for message in initial.actor("misc").bag] == [7]


def test_describe_is_json_ready() -> None:
    geometry = NetworkGeometry(packet_release=PacketRelease.COMPLETION)
    network, _ = build_network(BASELINE, geometry=geometry)
    dumped = json.loads(json.dumps(network.describe()))

    assert dumped["protocol"] == "tdma"
    assert dumped["geometry"]["packet_release"] == "completion"
    assert dumped["params"]["sensor_period"] == 11
    cpu = next(actor for actor in dumped["actors"] if actor["id"] == "cpu")
    assert cpu["variables"] == {"collected_samples": 0}
    assert "sensorEvent" in cpu["handlers"]


def test_geometry_round_trip_through_dict() -> None:
    geometry = NetworkGeometry(number_of_nodes=5, slot_size=2, slot_offset=4)
    assert NetworkGeometry.from_dict(geometry.to_dict()) == geometry
    assert NetworkGeometry.from_dict({"slot_size": 0}).slot_size is None


def test_period_one_below_minimum_misses_deadline() -> None:
    verdict = check_schedulability(BASELINE.with_period(10), options=FAIL_FAST)
    assert verdict.kind is VerdictKind.DEADLINE_MISS
    assert verdict.trace[-1].time == 10


def test_overlong_transmission_violates_packet_requirement() -> None:
    params = TaskParams(sensor_period=15, buffer_size=1, packet_tx_times=(30,))
    verdict = check_schedulability(params, options=FAIL_FAST)
    assert verdict.kind is VerdictKind.ASSERTION_FAILURE
    assert any(event.detail == "receiverDevice == null" for event in verdict.trace)
