"""Схема config.json по умолчанию."""

from __future__ import annotations

from typing import Any, Dict

# DEFAULT_CONFIG служит шаблоном для начального config.json
DEFAULT_CONFIG: Dict[str, Any] = {
    "version": "1.0.0",
    "logging": {
        "enabled": True,
        "level": "INFO",
        "max_file_size_mb": 10,
        "max_archived_files": 5,
    },
    "explorer": {
        "max_states": 5_000_000,
        "max_time_horizon_ms": 0,
        "frontier_order": "bfs",
        "seed": 0,
        "progress_every": 10_000,
        "deadline_inclusive": False,
        "worst_case_delays": False,
    },
    "search": {
        "period_lo": 1,
        "period_hi": 200,
        "strategy": "linear",
        "jobs": 1,
    },
    "network": {
        "number_of_nodes": 2,
        "slot_size_ms": 0,
        "slot_offset_ms": 0,
        "misc_offset_ms": 0,
        "packet_release": "handoff",
    },
}
