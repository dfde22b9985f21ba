"""Report writer errors."""

from typing import Union


class ReportEncodeError(TypeError):
    """An error raised if a report table is unable to be encoded."""


class ReportWriteError(RuntimeError):
    """An error raised when a report is unable to be written."""


ReportError = Union[ReportEncodeError, ReportWriteError]
