"""Global test configuration."""
from io import StringIO

import numpy as np
import pytest
from mock import MagicMock
from numpy.random import Generator

from galerkin_filter.models import (
    AdvectionBlockModel,
    MHDBlockModel,
    SawtoothFourierModel,
)
from galerkin_filter.reports import ReportWriterLike, SyncReportWriter
from .helpers import DiagonalFamily


@pytest.fixture
def rng() -> Generator:
    """Create a seeded random generator."""
    return np.random.default_rng(20201018)


@pytest.fixture
def diagonal_family() -> DiagonalFamily:
    """Create the diag(1, ..., 6) toy family."""
    return DiagonalFamily()


@pytest.fixture
def sawtooth() -> SawtoothFourierModel:
    """Create the Fourier sawtooth family."""
    return SawtoothFourierModel()


@pytest.fixture
def advection() -> AdvectionBlockModel:
    """Create the advection block family."""
    return AdvectionBlockModel()


@pytest.fixture
def mhd() -> MHDBlockModel:
    """Create the MHD block family."""
    return MHDBlockModel()


@pytest.fixture
def stdout() -> StringIO:
    """Create an in-memory stdout."""
    return StringIO()


@pytest.fixture
def report_writer(stdout: StringIO) -> SyncReportWriter:
    """Create a real report writer with an in-memory stdout."""
    return SyncReportWriter(stdout=stdout)


@pytest.fixture
def mock_writer() -> MagicMock:
    """Create a mock report writer."""
    return MagicMock(spec=ReportWriterLike)
