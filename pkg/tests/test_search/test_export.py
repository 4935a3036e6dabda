"""Тесты выгрузки таблиц в CSV, JSON и markdown."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from src.search.exceptions import TableFormatError
from src.search.export import (
    CSV_HEADER,
    TableFormat,
    from_json,
    read_table,
    to_csv,
    to_json,
    to_markdown,
    write_table,
)
from src.search.sweep import CellResult, CellStatus, Method, SweepSpec, SweepTable, run_sweep


def _mixed_table() -> SweepTable:
    return SweepTable(
        [
            CellResult(2, 1, Method.ANALYTICAL, 20, CellStatus.FOUND, binding_constraint="x"),
            CellResult(2, 1, Method.MODEL_CHECKING, 11, CellStatus.FOUND, states=2039, probes=11),
            CellResult(30, 1, Method.ANALYTICAL, 40, CellStatus.FOUND),
            CellResult(
                30,
                1,
                Method.MODEL_CHECKING,
                None,
                CellStatus.LIMIT_EXCEEDED,
                error="Exploration limit exceeded",
            ),
        ],
        {"tool": "wsan-sched", "method": "both"},
    )


def test_csv_header_and_rows() -> None:
    rows = list(csv.reader(io.StringIO(to_csv(_mixed_table()))))

    assert tuple(rows[0]) == CSV_HEADER
    assert rows[0] == ["cs", "n", "method", "min_period_ms", "max_rate_hz", "states", "verdict"]
    assert rows[2] == ["2", "1", "model-checking", "11", "90", "2039", "Schedulable"]
    assert rows[4] == ["30", "1", "model-checking", "", "", "", "LimitExceeded"]


def test_json_parse_emit_parse_fixpoint() -> None:
    text = to_json(_mixed_table())
    parsed = from_json(text)

    assert to_json(parsed) == text
    assert parsed.metadata == {"tool": "wsan-sched", "method": "both"}
    assert parsed.cell(2, 1, Method.MODEL_CHECKING).states == 2039


def test_json_rejects_inconsistent_rate() -> None:
    document = json.loads(to_json(_mixed_table()))
    document["cells"][0]["max_rate_hz"] = 51
    with pytest.raises(TableFormatError):
        from_json(json.dumps(document))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        json.dumps({"cells": []}),
        json.dumps({"metadata": {}, "cells": [{"cs": 2}]}),
        json.dumps({"metadata": {}, "cells": [], "extra": 1}),
    ],
)
def test_json_rejects_malformed_documents(text: str) -> None:
    with pytest.raises(TableFormatError):
        from_json(text)


def test_markdown_layout_of_analytical_sweep() -> None:
    markdown = to_markdown(run_sweep(SweepSpec(method=Method.ANALYTICAL)))
    lines = markdown.splitlines()

    assert lines[0] == "### Minimum feasible sampling period (ms)"
    assert lines[2] == (
        "| N | Analytical C_S=2 | Analytical C_S=10 | Analytical C_S=20 | Analytical C_S=30 |"
    )
    assert "| 1 | 20 | 20 | 30 | 40 |" in lines
    assert "| 2 | 12 | 20 | 30 | 40 |" in lines
    assert "| 2 | 83 | 50 | 33 | 25 |" in lines


def test_markdown_marks_missing_periods() -> None:
    lines = to_markdown(_mixed_table()).splitlines()
    assert "Model Checking C_S=30" in lines[2]
    assert lines[4] == "| 1 | 20 | 40 | 11 | limit |"


def test_markdown_marks_failed_cells() -> None:
    table = SweepTable(
        [CellResult(2, 1, Method.MODEL_CHECKING, None, CellStatus.ERROR, error="boom")], {}
    )
    assert to_markdown(table).splitlines()[4] == "| 1 | error |"


def test_write_and_read_table(tmp_path: Path) -> None:
    path = write_table(_mixed_table(), tmp_path / "out" / "table.json", TableFormat.JSON)
    assert read_table(path).to_dict() == _mixed_table().to_dict()

    with pytest.raises(TableFormatError):
        read_table(tmp_path / "missing.json")
