# -*- encoding: utf-8 -*-
"""Factory for creating input readers."""
from __future__ import annotations

from enum import Enum

from suspended_circuits.upload.reader import (
    DataReader,
    ProbeReader,
    SpecReader,
    SpectroscopyReader,
    SweepReader,
    TraceReader,
)


class ReaderType(Enum):
    SPEC = "spec"
    TRACE = "trace"
    SWEEP = "sweep"
    SPECTROSCOPY = "spectroscopy"
    PROBE = "probe"


class ReaderFactory:
    def create(self, reader_type: ReaderType) -> DataReader:
        if reader_type == ReaderType.SPEC:
            return SpecReader()
        if reader_type == ReaderType.TRACE:
            return TraceReader()
        if reader_type == ReaderType.SWEEP:
            return SweepReader()
        if reader_type == ReaderType.SPECTROSCOPY:
            return SpectroscopyReader()
        if reader_type == ReaderType.PROBE:
            return ProbeReader()

        raise ValueError("Unable to create reader for type: " + str(reader_type))
