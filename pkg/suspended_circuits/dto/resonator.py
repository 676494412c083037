# -*- encoding: utf-8 -*-
"""Resonator-analysis Data Transfer Objects."""
from __future__ import annotations

from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class S21Trace(BaseModel):
    """Complex transmission versus frequency with drive-power metadata."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    freqs: np.ndarray
    s21: np.ndarray
    power_dbm: Optional[float] = None
    attenuation_db: float = 0.0
    name: str = ""

    @field_validator("freqs", "s21", mode="before")
    @classmethod
    def _as_array(cls, value):
        return np.asarray(value)

    @model_validator(mode="after")
    def _consistent(self) -> S21Trace:
        if self.freqs.shape != self.s21.shape or self.freqs.ndim != 1:
            raise ValueError("freqs and s21 must be 1-D arrays of equal length")
        if self.freqs.size < 2 or np.any(np.diff(self.freqs) <= 0):
            raise ValueError("freqs must be strictly increasing")
        return self


class HangerFit(BaseModel):
    """Hanger resonator parameters (diameter-correction convention)."""

    model_config = ConfigDict(frozen=True)

    f0: float = Field(gt=0)
    q_i: float = Field(gt=0)
    q_e: float = Field(gt=0)
    phi_asym: float = 0.0
    amplitude: float = 1.0
    phase_offset: float = 0.0
    delay: float = 0.0
    stderr: Dict[str, float] = Field(default_factory=dict)

    @property
    def q_t(self) -> float:
        return 1.0 / (1.0 / self.q_i + 1.0 / self.q_e)

    @property
    def linewidth_hz(self) -> float:
        return self.f0 / self.q_t

    def record(self) -> Dict[str, object]:
        return {
            "f0_ghz": self.f0 / 1e9,
            "q_i": self.q_i,
            "q_e": self.q_e,
            "q_t": self.q_t,
            "phi_asym": self.phi_asym,
            "amplitude": self.amplitude,
            "phase_offset": self.phase_offset,
            "delay_ns": self.delay * 1e9,
            "stderr": self.stderr,
        }


class KerrFit(BaseModel):
    """Linear frequency-versus-photon-number fit f = f_intercept - k_self * n."""

    model_config = ConfigDict(frozen=True)

    f_intercept: float
    k_self: float
    k_self_stderr: float
    fit_window: Tuple[float, float]
    n_points: int

    @model_validator(mode="after")
    def _non_empty_window(self) -> KerrFit:
        if self.n_points < 1 or self.fit_window[1] < self.fit_window[0]:
            raise ValueError("empty Kerr fit window")
        return self


class KerrRow(BaseModel):
    """One row of a self-Kerr summary table."""

    name: str
    k_self_khz: float
    k_self_stderr_khz: float
    f_intercept_ghz: float
    anchor_power_dbm: float
    anchor_photons: float
    q_i_mean: float
    q_i_std: float
    q_e_mean: float
    q_e_std: float
