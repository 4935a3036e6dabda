"""Сборка сети акторов узла WSAN и проверка её планируемости."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

from src.kernel.explorer import ExplorationLimits, ExplorerOptions, explore
from src.kernel.model import ActorDef, ActorModel
from src.kernel.state import TimedState
from src.kernel.verdict import Verdict
from src.model.params import BmacParams, MediumProtocol, TaskParams, validate
from src.wsan.actors import (
    RECEIVER,
    SENDER,
    PacketRelease,
    bmac_rcd_actor,
    cpu_actor,
    ether_actor,
    misc_actor,
    sensor_actor,
    tdma_rcd_actor,
)
from src.wsan.exceptions import NetworkConfigurationError

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class NetworkGeometry:
    """Геометрия слотов TDMA и фазы задач.

    ``slot_size`` None означает T_tdma / number_of_nodes. Слот отправителя
    начинается в ``slot_offset``, первая прочая задача - в ``misc_offset``.
    """

    number_of_nodes: int = 2
    slot_size: Optional[int] = None
    slot_offset: int = 0
    misc_offset: int = 0
    packet_release: PacketRelease = PacketRelease.HANDOFF

    def resolve(self, superframe: int) -> "NetworkGeometry":
        """Копия с явным размером слота."""

        if self.slot_size is not None:
            return self
        if self.number_of_nodes < 1:
            raise NetworkConfigurationError(
                "number_of_nodes must be ≥ 1", number_of_nodes=self.number_of_nodes
            )
        return replace(self, slot_size=superframe // self.number_of_nodes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "number_of_nodes": self.number_of_nodes,
            "slot_size": self.slot_size,
            "slot_offset": self.slot_offset,
            "misc_offset": self.misc_offset,
            "packet_release": self.packet_release.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NetworkGeometry":
        defaults = cls()
        slot_size = data.get("slot_size")
        return cls(
            number_of_nodes=int(data.get("number_of_nodes", defaults.number_of_nodes)),
            slot_size=int(slot_size) if slot_size else None,
            slot_offset=int(data.get("slot_offset", defaults.slot_offset)),
            misc_offset=int(data.get("misc_offset", defaults.misc_offset)),
            packet_release=PacketRelease(
                data.get("packet_release", defaults.packet_release.value)
            ),
        )


@dataclass(frozen=True, slots=True)
class WsanNetwork:
    """Экземпляр сети: medium, cpu, sensor, misc и два радиоустройства."""

    params: TaskParams
    protocol: MediumProtocol
    geometry: NetworkGeometry
    model: ActorModel
    bmac: Optional[BmacParams] = None

    def initial_state(self) -> TimedState:
        return self.model.initial_state()

    def actor(self, actor_id: str) -> ActorDef:
        return self.model.actor(actor_id)

    def describe(self) -> Dict[str, Any]:
        """Описание сети для вывода dump-network."""

        payload: Dict[str, Any] = {
            "protocol": self.protocol.value,
            "params": self.params.to_dict(),
            "geometry": self.geometry.to_dict(),
            "actors": self.model.describe(),
        }
        if self.bmac is not None:
            payload["bmac"] = self.bmac.to_dict()
        return payload


def _check_geometry(params: TaskParams, geometry: NetworkGeometry) -> None:
    slot_size = geometry.slot_size
    assert slot_size is not None
    if slot_size < 1:
        raise NetworkConfigurationError("slot_size must be ≥ 1", slot_size=slot_size)
    if slot_size * geometry.number_of_nodes != params.tdma_superframe:
        raise NetworkConfigurationError(
            "slot geometry does not tile the super-frame",
            slot_size=slot_size,
            number_of_nodes=geometry.number_of_nodes,
            tdma_superframe=params.tdma_superframe,
        )
    if not 0 <= geometry.slot_offset < params.tdma_superframe:
        raise NetworkConfigurationError(
            "slot_offset must lie inside the super-frame", slot_offset=geometry.slot_offset
        )


def build_network(
    params: TaskParams,
    protocol: MediumProtocol = MediumProtocol.TDMA,
    geometry: NetworkGeometry = NetworkGeometry(),
    *,
    bmac: Optional[BmacParams] = None,
) -> Tuple[WsanNetwork, TimedState]:
    """Создаёт акторы в порядке medium, cpu, sensor, misc, sender, receiver.

    Конструкторы кладут в очереди sensorLoop, miscLoop и (для TDMA) первый
    handleTDMASlot отправителя.
    """

    problems = validate(params)
    if problems:
        raise NetworkConfigurationError("invalid parameters", problems=problems)
    if params.sensor_period is None:
        raise NetworkConfigurationError("sensor_period is required to build a network")
    if geometry.misc_offset < 0:
        raise NetworkConfigurationError(
            "misc_offset must be ≥ 0", misc_offset=geometry.misc_offset
        )

    resolved = geometry.resolve(params.tdma_superframe)
    if protocol is MediumProtocol.TDMA:
        _check_geometry(params, resolved)
        assert resolved.slot_size is not None
        sender = tdma_rcd_actor(
            SENDER,
            slot_size=resolved.slot_size,
            number_of_nodes=resolved.number_of_nodes,
            packet_release=resolved.packet_release,
            slot_offset=resolved.slot_offset,
        )
        receiver = tdma_rcd_actor(
            RECEIVER,
            slot_size=resolved.slot_size,
            number_of_nodes=resolved.number_of_nodes,
            packet_release=resolved.packet_release,
        )
    else:
        if geometry.slot_size is not None or geometry.slot_offset:
            LOGGER.warning("Slot geometry is ignored for protocol %s", protocol.value)
        sender = bmac_rcd_actor(SENDER, params)
        receiver = bmac_rcd_actor(RECEIVER, params)

    model = ActorModel(
        [
            ether_actor(params),
            cpu_actor(params),
            sensor_actor(params),
            misc_actor(params, resolved.misc_offset),
            sender,
            receiver,
        ]
    )
    network = WsanNetwork(params, protocol, resolved, model, bmac)
    LOGGER.debug(
        "Built %s network: T_S=%d, C_S=%d, N=%d, geometry=%s",
        protocol.value,
        params.sensor_period,
        params.sensor_wcet,
        params.buffer_size,
        resolved.to_dict(),
    )
    return network, network.initial_state()


def check_schedulability(
    params: TaskParams,
    protocol: MediumProtocol = MediumProtocol.TDMA,
    geometry: NetworkGeometry = NetworkGeometry(),
    *,
    limits: ExplorationLimits = ExplorationLimits(),
    options: ExplorerOptions = ExplorerOptions(),
) -> Verdict:
    """Строит сеть для заданного периода и исследует её пространство состояний."""

    network, initial = build_network(params, protocol, geometry)
    LOGGER.info(
        "Checking %s network with T_S=%s (C_S=%d, N=%d)",
        protocol.value,
        params.sensor_period,
        params.sensor_wcet,
        params.buffer_size,
    )
    return explore(network.model, initial, limits, options)
