# -*- encoding: utf-8 -*-
"""Readers for the input files of the analysis chain."""
from __future__ import annotations

import json
import os
import re
from abc import ABC, abstractmethod
from typing import List, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from suspended_circuits.dto.core import ArrayCircuitSpec
from suspended_circuits.dto.fluxonium import SpectroscopyPoint
from suspended_circuits.dto.probe import ProbeDataset
from suspended_circuits.dto.resonator import S21Trace
from suspended_circuits.schema.exceptions import InputError

POWER_IN_NAME = re.compile(r"^(?P<name>.+)_p(?P<power>[-+]?\d+(?:\.\d+)?)$")


class DataReader(ABC):
    @abstractmethod
    def read(self, path: str):
        raise NotImplementedError

    def _check_exists(self, path: str) -> None:
        if not os.path.exists(path):
            raise InputError(f"no such file or directory: {path}")

    def _read_csv(self, path: str, required: Sequence[str], **kwargs) -> pd.DataFrame:
        self._check_exists(path)
        try:
            frame = pd.read_csv(path, **kwargs)
        except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
            raise InputError(f"could not parse {path}: {e}") from e
        missing = [column for column in required if column not in frame.columns]
        if missing:
            raise InputError(f"{path}: missing column(s) {', '.join(missing)}")
        if frame.empty:
            raise InputError(f"{path}: no data rows")
        return frame

    def _read_json(self, path: str) -> dict:
        self._check_exists(path)
        try:
            with open(path) as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"could not parse {path}: {e}") from e
        if not isinstance(data, dict):
            raise InputError(f"{path}: expected a JSON object")
        return data


class SpecReader(DataReader):
    """Circuit description in JSON, capacitances in fF and l_j in nH."""

    def read(self, path: str) -> ArrayCircuitSpec:
        data = self._read_json(path)
        try:
            return ArrayCircuitSpec.from_serialized(data)
        except ValidationError as e:
            raise InputError(f"{path}: invalid circuit spec: {e}") from e
        except (TypeError, ValueError) as e:
            raise InputError(f"{path}: invalid circuit spec: {e}") from e


class TraceReader(DataReader):
    """One S21 trace: freq_hz with s21_re/s21_im or s21_db/s21_phase_rad."""

    def read(self, path: str) -> S21Trace:
        self._check_exists(path)
        frame = self._read_csv(path, ["freq_hz"])
        if {"s21_re", "s21_im"} <= set(frame.columns):
            s21 = frame["s21_re"].to_numpy(float) + 1j * frame["s21_im"].to_numpy(float)
        elif {"s21_db", "s21_phase_rad"} <= set(frame.columns):
            s21 = np.power(10.0, frame["s21_db"].to_numpy(float) / 20.0) * np.exp(
                1j * frame["s21_phase_rad"].to_numpy(float),
            )
        else:
            raise InputError(
                f"{path}: need columns s21_re and s21_im, or s21_db and s21_phase_rad",
            )
        name = os.path.splitext(os.path.basename(path))[0]
        try:
            return S21Trace(freqs=frame["freq_hz"].to_numpy(float), s21=s21, name=name)
        except ValidationError as e:
            raise InputError(f"{path}: invalid trace: {e}") from e


class SweepReader(DataReader):
    """Directory of traces, one per drive power.

    The power comes from a sidecar ``<trace>.json`` holding ``power_dbm``
    (and optionally ``attenuation_db``) or from a ``<name>_p<dBm>.csv`` file name.
    """

    def read(self, path: str) -> List[S21Trace]:
        self._check_exists(path)
        if not os.path.isdir(path):
            raise InputError(f"{path} is not a directory of traces")
        files = sorted(f for f in os.listdir(path) if f.lower().endswith(".csv"))
        if not files:
            raise InputError(f"{path}: no trace files found")
        trace_reader = TraceReader()
        traces = []
        for file_name in files:
            file_path = os.path.join(path, file_name)
            trace = trace_reader.read(file_path)
            stem = os.path.splitext(file_name)[0]
            metadata = {}
            sidecar = os.path.join(path, stem + ".json")
            if os.path.isfile(sidecar):
                metadata = self._read_json(sidecar)
            match = POWER_IN_NAME.match(stem)
            if "power_dbm" not in metadata and match:
                metadata["power_dbm"] = float(match.group("power"))
            if metadata.get("power_dbm") is None:
                raise InputError(
                    f"{file_path}: missing power metadata "
                    "(sidecar JSON power_dbm or <name>_p<dBm>.csv)",
                )
            traces.append(
                trace.model_copy(
                    update={
                        "power_dbm": float(metadata["power_dbm"]),
                        "attenuation_db": float(metadata.get("attenuation_db", 0.0)),
                    },
                ),
            )
        return traces


class SpectroscopyReader(DataReader):
    """Fluxonium transitions: phi_ext_over_2pi, transition ("01"), freq_ghz."""

    def read(self, path: str) -> List[SpectroscopyPoint]:
        frame = self._read_csv(
            path,
            ["phi_ext_over_2pi", "transition", "freq_ghz"],
            dtype={"transition": str},
        )
        points = []
        for row in frame.itertuples(index=False):
            label = str(row.transition).strip()
            if len(label) != 2 or not label.isdigit():
                raise InputError(f"{path}: transition must look like '01', got {label!r}")
            points.append(
                SpectroscopyPoint(
                    phi_ext=2 * np.pi * float(row.phi_ext_over_2pi),
                    transition=(int(label[0]), int(label[1])),
                    freq_ghz=float(row.freq_ghz),
                ),
            )
        return points


class ProbeReader(DataReader):
    """Long-format probe results: n_junctions, resistance_ohm."""

    def read(self, path: str) -> ProbeDataset:
        frame = self._read_csv(path, ["n_junctions", "resistance_ohm"])
        try:
            return ProbeDataset.from_pairs(
                frame["n_junctions"].astype(int), frame["resistance_ohm"].astype(float),
            )
        except (ValidationError, ValueError) as e:
            raise InputError(f"{path}: invalid probe data: {e}") from e
