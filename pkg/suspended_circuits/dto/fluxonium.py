# -*- encoding: utf-8 -*-
"""Fluxonium Data Transfer Objects."""
from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from suspended_circuits.dto.core import FluxoniumParams  # noqa: TCH001


class FluxoniumSolution(BaseModel):
    """Spectrum (GHz, ground state at zero) and |n_ij| in the eigenbasis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    energies: np.ndarray
    n_matrix: np.ndarray
    dim_used: int
    converged: bool

    def transition(self, i: int, j: int) -> float:
        return float(self.energies[j] - self.energies[i])


class DephasingInputs(BaseModel):
    """Resonator linewidth and dispersive shift in rad/s, thermal occupation."""

    model_config = ConfigDict(frozen=True)

    kappa_r: float = Field(gt=0)
    chi_01: float
    n_th: float = Field(ge=0)


class DephasingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_phi: float
    t_phi: float

    def record(self) -> Dict[str, object]:
        return {
            "gamma_phi_per_s": self.gamma_phi,
            "t_phi_us": "inf" if np.isinf(self.t_phi) else self.t_phi * 1e6,
        }


class DispersiveShift(BaseModel):
    """Second-order dispersive shift χ01 with its truncation remainder, rad/s."""

    model_config = ConfigDict(frozen=True)

    chi_01: float
    remainder: float
    levels: int
    phi_ext: float
    dispersive_ratio: float = Field(ge=0)

    def record(self) -> Dict[str, float]:
        return {
            "phi_ext_over_pi": self.phi_ext / np.pi,
            "chi_01_mhz": self.chi_01 / (2 * np.pi) / 1e6,
            "abs_chi_01_mhz": abs(self.chi_01) / (2 * np.pi) / 1e6,
            "remainder_mhz": self.remainder / (2 * np.pi) / 1e6,
            "levels": self.levels,
            "dispersive_ratio": self.dispersive_ratio,
        }


class SpectroscopyPoint(BaseModel):
    """A measured transition frequency at one flux bias."""

    model_config = ConfigDict(frozen=True)

    phi_ext: float
    transition: Tuple[int, int]
    freq_ghz: float


class FluxoniumFit(BaseModel):
    """Fitted fluxonium parameters and residuals (GHz)."""

    model_config = ConfigDict(frozen=True)

    params: FluxoniumParams
    stderr: Dict[str, float] = Field(default_factory=dict)
    residuals_ghz: List[float]
    iterations: int
    success: bool

    def record(self) -> Dict[str, object]:
        return {
            "e_j": self.params.e_j,
            "e_c": self.params.e_c,
            "e_l": self.params.e_l,
            "stderr": self.stderr,
            "rms_residual_mhz": float(np.sqrt(np.mean(np.square(self.residuals_ghz)))) * 1e3,
            "iterations": self.iterations,
            "success": self.success,
        }
