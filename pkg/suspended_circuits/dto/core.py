# -*- encoding: utf-8 -*-
# ruff: noqa: TCH003
"""Core domain types: constants, circuit descriptions and mode spectra.

Values are held in SI units (farad, henry, rad/s). Fluxonium energies are
E/h in GHz. The serialized JSON form of a circuit uses fF and nH.
"""
from __future__ import annotations

from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

FEMTO = 1e-15
NANO = 1e-9
CAPACITANCE_FIELDS = (
    "c_j", "c_0", "c_s", "c_g_left", "c_g_right", "c_c_left", "c_c_right",
)


class PhysicalConstants(BaseModel):
    """Physical constants (CODATA, SI)."""

    model_config = ConfigDict(frozen=True)

    planck_h: float = Field(default=constants.h, gt=0)
    hbar: float = Field(default=constants.hbar, gt=0)
    electron_charge: float = Field(default=constants.e, gt=0)
    flux_quantum: float = Field(default=constants.h / (2 * constants.e), gt=0)
    boltzmann: float = Field(default=constants.k, gt=0)

    @model_validator(mode="after")
    def _consistent_flux_quantum(self) -> PhysicalConstants:
        expected = self.planck_h / (2 * self.electron_charge)
        if abs(self.flux_quantum - expected) > 1e-12 * expected:
            raise ValueError("flux_quantum must equal planck_h / (2 electron_charge)")
        return self


CONSTANTS = PhysicalConstants()


class ArrayCircuitSpec(BaseModel):
    """Electrical description of a capacitively shunted JJ array."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_junctions: int = Field(ge=1)
    l_j: float = Field(gt=0)
    c_j: float = Field(gt=0)
    c_0: float = Field(default=0.0, ge=0)
    c_s: float = Field(default=0.0, ge=0)
    c_g_left: float = Field(default=0.0, ge=0)
    c_g_right: float = Field(default=0.0, ge=0)
    c_c_left: float = Field(default=0.0, ge=0)
    c_c_right: float = Field(default=0.0, ge=0)

    @classmethod
    def from_serialized(cls, data: Dict[str, Any]) -> ArrayCircuitSpec:
        """Build a spec from its JSON form (capacitances in fF, inductance in nH)."""
        values = dict(data)
        for key in CAPACITANCE_FIELDS:
            if key in values and values[key] is not None:
                values[key] = float(values[key]) * FEMTO
        if values.get("l_j") is not None:
            values["l_j"] = float(values["l_j"]) * NANO
        return cls(**values)

    def serialize(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"n_junctions": self.n_junctions, "l_j": self.l_j / NANO}
        for key in CAPACITANCE_FIELDS:
            data[key] = getattr(self, key) / FEMTO
        return data

    def with_c0(self, c_0: float) -> ArrayCircuitSpec:
        return self.model_copy(update={"c_0": c_0})


class FluxoniumParams(BaseModel):
    """Fluxonium energies E/h in GHz and the external flux phase in radians."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    e_j: float = Field(gt=0)
    e_c: float = Field(gt=0)
    e_l: float = Field(gt=0)
    phi_ext: float = Field(default=np.pi)

    def at_flux(self, phi_ext: float) -> FluxoniumParams:
        return self.model_copy(update={"phi_ext": float(phi_ext)})


class ModeSpectrum(BaseModel):
    """Normal modes of a circuit, C-orthonormal and sorted ascending."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frequencies: np.ndarray
    mode_vectors: np.ndarray
    n_zero_modes: int = 0

    @property
    def frequencies_hz(self) -> np.ndarray:
        return self.frequencies / (2 * np.pi)

    @property
    def frequencies_ghz(self) -> np.ndarray:
        return self.frequencies_hz / 1e9

    @property
    def fundamental_hz(self) -> float:
        return float(self.frequencies_hz[0])
