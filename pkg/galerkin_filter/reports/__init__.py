"""Report tables and writers for galerkin_filter."""
from .base import (
    DEFAULT_PRECISION,
    ENCODERS,
    SOLVE_COLUMNS,
    SWEEP_COLUMNS,
    ReportFormat,
    ReportTable,
    ReportWriterLike,
    encode_csv,
    encode_json,
    format_cell,
    record_row,
    solve_table,
    sweep_table,
)
from .errors import ReportEncodeError, ReportError, ReportWriteError
from .sync_writer import STDOUT, SyncReportWriter


__all__ = [
    "DEFAULT_PRECISION",
    "ENCODERS",
    "ReportEncodeError",
    "ReportError",
    "ReportFormat",
    "ReportTable",
    "ReportWriteError",
    "ReportWriterLike",
    "SOLVE_COLUMNS",
    "STDOUT",
    "SWEEP_COLUMNS",
    "SyncReportWriter",
    "encode_csv",
    "encode_json",
    "format_cell",
    "record_row",
    "solve_table",
    "sweep_table",
]
