"""Tests for report tables and encoders."""
import json

import pytest

from galerkin_filter.filtering import SolveStatus, SweepRecord, SweepReport, SweepStatus
from galerkin_filter.galerkin import Interval
from galerkin_filter.reports import (
    SOLVE_COLUMNS,
    SWEEP_COLUMNS,
    ReportTable,
    encode_csv,
    encode_json,
    format_cell,
    solve_table,
    sweep_table,
)
from galerkin_filter.reports.base import round_cell


@pytest.fixture
def record() -> SweepRecord:
    """Create a polluted sweep record."""
    return SweepRecord(
        refinement="h=1/64",
        reference="h=1/2",
        dim_reference=7,
        dim_window=5,
        galerkin_values=[2.0, 10.971671616],
        sigma_p=[1.0, 0.123456789, 0.0],
        d_selected=2,
        gamma_est=0.123456789,
        ritz_values=[2.0, 10.969604404],
        status=SolveStatus.OK,
        pollution_flag=True,
    )


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (None, ""),
        (True, "true"),
        (False, "false"),
        (3, "3"),
        (0.5, "0.50000000"),
        ("h=1/8", "h=1/8"),
        ([1.0, 0.25], "1.00000000;0.25000000"),
        ([], ""),
    ],
)
def test_format_cell(value: object, expected: str) -> None:
    """It should format every cell kind for CSV."""
    assert format_cell(value, 8) == expected  # type: ignore[arg-type]


def test_round_cell() -> None:
    """It should round floats and lists but leave other cells alone."""
    assert round_cell(0.123456789, 4) == 0.1235
    assert round_cell([0.123456789, 1.0], 2) == [0.12, 1.0]
    assert round_cell(True, 2) is True
    assert round_cell(None, 2) is None
    assert round_cell(5, 2) == 5


def test_table_append_keeps_columns() -> None:
    """It should drop unknown cells and fill missing ones with None."""
    table = ReportTable(columns=["a", "b"])
    table.append({"a": 1, "c": 2})

    assert table.rows == [{"a": 1, "b": None}]


def test_encode_csv(record: SweepRecord) -> None:
    """It should write a header, LF endings and joined lists."""
    encoded = encode_csv(solve_table(record))
    lines = encoded.split("\n")

    assert "\r" not in encoded
    assert lines[0] == ",".join(SOLVE_COLUMNS)
    assert lines[1] == (
        "h=1/64,h=1/2,ok,5,2.00000000;10.97167162,"
        "1.00000000;0.12345679;0.00000000,2,0.12345679,"
        "2.00000000;10.96960440,true,,,"
    )
    assert lines[2] == ""


def test_encode_json(record: SweepRecord) -> None:
    """It should carry the same rounded numbers as the CSV."""
    rows = json.loads(encode_json(solve_table(record), 4))

    assert rows == [
        {
            "refinement": "h=1/64",
            "reference": "h=1/2",
            "status": "ok",
            "dim_window": 5,
            "galerkin_values": [2.0, 10.9717],
            "sigma_P": [1.0, 0.1235, 0.0],
            "d_selected": 2,
            "gamma_est": 0.1235,
            "ritz_values": [2.0, 10.9696],
            "pollution_flag": True,
            "dist_to_reference": None,
            "delta_gap": None,
            "delta_a_gap": None,
        }
    ]


def test_sweep_table(record: SweepRecord) -> None:
    """It should emit one row per record in sweep column order."""
    report = SweepReport(
        model="model2",
        interval=Interval(a=1.001, b=12.0),
        policy="expected_dim(2)",
        reference="h=1/2",
        status=SweepStatus.UNDETERMINED,
        head_count=None,
        stabilized_at=None,
        records=[record, record.copy(update={"refinement": "h=1/128"})],
    )

    table = sweep_table(report)

    assert list(table.columns) == list(SWEEP_COLUMNS)
    assert [row["refinement"] for row in table.rows] == ["h=1/64", "h=1/128"]
    assert table.rows[0]["sigma_P"] == [1.0, 0.123456789, 0.0]
