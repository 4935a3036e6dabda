"""Сеть акторов узла WSAN: сенсор, прочая нагрузка, CPU, среда и радио (TDMA/B-MAC)."""

from src.wsan.actors import PacketRelease
from src.wsan.exceptions import NetworkConfigurationError, WsanError
from src.wsan.network import NetworkGeometry, WsanNetwork, build_network, check_schedulability

__all__ = [
    "NetworkConfigurationError",
    "NetworkGeometry",
    "PacketRelease",
    "WsanError",
    "WsanNetwork",
    "build_network",
    "check_schedulability",
]
