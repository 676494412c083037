# -*- encoding: utf-8 -*-
"""The suspended_circuits configuration."""
from __future__ import annotations

import os
from typing import Optional

from dotenv import dotenv_values
from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from suspended_circuits.schema.exceptions import InputError

CONFIG_PATH_ENV = "SUSPENDED_CIRCUITS_CONFIG"

base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
with open(os.path.join(base_dir, "VERSION")) as version_file:
    version = version_file.read().strip()


class Settings(BaseSettings):
    """Run configuration. Every physical key carries its unit in the name."""

    model_config = SettingsConfigDict(env_prefix="SC_", extra="forbid")

    log_level: str = Field(default="warning")
    output_dir: str = Field(default=".")
    version: str = Field(default=version)
    seed: int = Field(default=1234)

    """
    CONSTANTS OVERRIDES
    """

    gap_uev: float = Field(default=180.0, ge=0)
    attenuation_correction_db: float = Field(default=0.85, ge=0)

    """
    NORMAL MODES / GROUND CAPACITANCE
    """

    zero_mode_threshold_mhz: float = Field(default=1.0, gt=0)
    c0_tol_hz: float = Field(default=1.0e3, gt=0)
    c0_bracket_low_af: float = Field(default=1.0, gt=0)
    c0_bracket_high_af: float = Field(default=1.0e4, gt=0)
    c0_max_iterations: int = Field(default=200, gt=0)

    """
    FLUXONIUM
    """

    fluxonium_tol_khz: float = Field(default=1.0, gt=0)
    fluxonium_dim_start: int = Field(default=40, ge=10)
    fluxonium_dim_step: int = Field(default=40, gt=0)
    fluxonium_dim_cap: int = Field(default=400, ge=10)
    fit_dim: int = Field(default=80, ge=10)
    fit_max_iterations: int = Field(default=500, gt=0)
    dispersive_levels: int = Field(default=15, ge=2)
    resonance_guard_mhz: float = Field(default=1.0, gt=0)
    dispersive_ratio_max: float = Field(default=0.1, gt=0, lt=1)
    operating_point_step_pi: float = Field(default=0.005, gt=0, le=0.1)
    grid_points: int = Field(default=4096, gt=16)
    grid_half_width_pi: float = Field(default=12.0, gt=0)

    """
    RESONATOR ANALYSIS
    """

    kerr_window_before: int = Field(default=1, ge=0)
    kerr_window_after: int = Field(default=10, ge=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return value.lower()

    @field_validator("c0_bracket_high_af")
    @classmethod
    def _ordered_bracket(cls, value: float, info) -> float:
        low = info.data.get("c0_bracket_low_af")
        if low is not None and value <= low:
            raise ValueError("c0_bracket_high_af must exceed c0_bracket_low_af")
        return value

    @property
    def gap_ev(self) -> float:
        return self.gap_uev / 1e6

    @property
    def c0_bracket_farad(self):
        return (self.c0_bracket_low_af * 1e-18, self.c0_bracket_high_af * 1e-18)


def load_settings(config_path: Optional[str] = None, **overrides) -> Settings:
    """Build settings from a flat ``key=value`` file plus explicit overrides.

    The file path falls back to the ``SUSPENDED_CIRCUITS_CONFIG`` environment
    variable. Unknown keys are rejected.
    """
    path = config_path or os.getenv(CONFIG_PATH_ENV)
    values = {}
    if path:
        if not os.path.isfile(path):
            raise InputError(f"config file not found: {path}")
        values.update(
            {k: v for k, v in dotenv_values(path).items() if v is not None},
        )
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Settings(**values)
    except ValidationError as e:
        raise InputError(f"invalid configuration: {e}") from e

