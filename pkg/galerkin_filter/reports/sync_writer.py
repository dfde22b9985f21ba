"""Synchronous report writer."""
import sys
from logging import getLogger
from pathlib import Path
from typing import Optional, TextIO

from .base import (
    DEFAULT_PRECISION,
    ReportEncoder,
    ReportTable,
    ReportWriterLike,
    encode_csv,
)
from .errors import ReportEncodeError, ReportWriteError


log = getLogger(__name__)

STDOUT = "-"


class SyncReportWriter(ReportWriterLike):
    """Synchronous report writer for files and stdout."""

    def __init__(
        self, precision: int = DEFAULT_PRECISION, stdout: Optional[TextIO] = None
    ) -> None:
        """Initialize a writer with a decimal precision for numbers."""
        self._precision = precision
        self._stdout = stdout

    def write(
        self,
        table: ReportTable,
        destination: str,
        encode: ReportEncoder = encode_csv,
    ) -> None:
        """Encode a table and write it to a path, or to stdout for `-`."""
        try:
            encoded = encode(table, self._precision)
        except Exception as error:
            log.debug(f"Unexpected error encoding for {destination}", exc_info=error)
            raise ReportEncodeError(str(error)) from error

        try:
            if destination == STDOUT:
                stream = self._stdout or sys.stdout
                stream.write(encoded)
                stream.flush()
            else:
                path = Path(destination)
                path.parent.mkdir(parents=True, exist_ok=True)
                with path.open("w", encoding="utf-8", newline="\n") as file:
                    file.write(encoded)
        except Exception as error:
            log.debug(f"Unexpected error writing to {destination}", exc_info=error)
            raise ReportWriteError(str(error)) from error

        log.debug(f"wrote {len(table.rows)} rows to {destination}")
