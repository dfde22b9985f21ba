"""Report tables, text encoders and the writer interface."""
from abc import ABC, abstractmethod
from csv import writer as csv_writer
from dataclasses import dataclass, field
from enum import Enum
from io import StringIO
from json import dumps as json_dumps
from typing import Any, Callable, Dict, List, Mapping, Sequence, Union

from ..filtering import SweepRecord, SweepReport


DEFAULT_PRECISION = 8

Cell = Union[None, bool, int, float, str, Sequence[float]]
ReportEncoder = Callable[["ReportTable", int], str]

SWEEP_COLUMNS = (
    "refinement",
    "dim_window",
    "sigma_P",
    "d_selected",
    "gamma_est",
    "ritz_values",
    "pollution_flag",
    "dist_to_reference",
    "delta_gap",
    "delta_a_gap",
)

SOLVE_COLUMNS = (
    "refinement",
    "reference",
    "status",
    "dim_window",
    "galerkin_values",
    "sigma_P",
    "d_selected",
    "gamma_est",
    "ritz_values",
    "pollution_flag",
    "dist_to_reference",
    "delta_gap",
    "delta_a_gap",
)


class ReportFormat(str, Enum):
    """Output formats understood by report writers."""

    CSV = "csv"
    JSON = "json"


@dataclass
class ReportTable:
    """Rows of named cells with a fixed column order."""

    columns: Sequence[str]
    rows: List[Dict[str, Cell]] = field(default_factory=list)

    def append(self, row: Mapping[str, Cell]) -> None:
        """Add a row, keeping only the table's columns."""
        self.rows.append({column: row.get(column) for column in self.columns})


def record_row(record: SweepRecord) -> Dict[str, Cell]:
    """Flatten a sweep record into report cells."""
    return {
        "refinement": record.refinement,
        "reference": record.reference,
        "status": record.status.value,
        "dim_window": record.dim_window,
        "galerkin_values": record.galerkin_values,
        "sigma_P": record.sigma_p,
        "d_selected": record.d_selected,
        "gamma_est": record.gamma_est,
        "ritz_values": record.ritz_values,
        "pollution_flag": record.pollution_flag,
        "dist_to_reference": record.dist_to_reference,
        "delta_gap": record.delta_gap,
        "delta_a_gap": record.delta_a_gap,
    }


def sweep_table(report: SweepReport) -> ReportTable:
    """Get one row per refinement of a sweep."""
    table = ReportTable(columns=SWEEP_COLUMNS)
    for record in report.records:
        table.append(record_row(record))
    return table


def solve_table(record: SweepRecord) -> ReportTable:
    """Get the single row of a filtered solve."""
    table = ReportTable(columns=SOLVE_COLUMNS)
    table.append(record_row(record))
    return table


def format_cell(value: Cell, precision: int) -> str:
    """
    Format a cell for CSV.

    Floats use a fixed number of decimals, lists are joined with `;` and
    missing values are left empty.
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{precision}f}"
    if isinstance(value, str):
        return value
    return ";".join(f"{item:.{precision}f}" for item in value)


def round_cell(value: Cell, precision: int) -> Any:
    """Round a cell for JSON so it carries the same numbers as the CSV."""
    if isinstance(value, bool) or not isinstance(value, (float, list, tuple)):
        return value
    if isinstance(value, float):
        return round(value, precision)
    return [round(item, precision) for item in value]


def encode_csv(table: ReportTable, precision: int = DEFAULT_PRECISION) -> str:
    """Encode a table as CSV with a header row and LF line endings."""
    buffer = StringIO()
    writer = csv_writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)

    for row in table.rows:
        writer.writerow(
            [format_cell(row[column], precision) for column in table.columns]
        )

    return buffer.getvalue()


def encode_json(table: ReportTable, precision: int = DEFAULT_PRECISION) -> str:
    """Encode a table as a JSON array with one object per row."""
    rows = [
        {column: round_cell(row[column], precision) for column in table.columns}
        for row in table.rows
    ]
    return json_dumps(rows, indent=2) + "\n"


ENCODERS: Dict[ReportFormat, ReportEncoder] = {
    ReportFormat.CSV: encode_csv,
    ReportFormat.JSON: encode_json,
}


class ReportWriterLike(ABC):
    """Abstract report writer interface."""

    @abstractmethod
    def write(
        self,
        table: ReportTable,
        destination: str,
        encode: ReportEncoder,
    ) -> None:
        """Encode a table and write it to a path, or to stdout for `-`."""
        ...
