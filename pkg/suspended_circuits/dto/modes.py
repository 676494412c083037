# -*- encoding: utf-8 -*-
"""Normal-mode Data Transfer Objects."""
from __future__ import annotations

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator


class C0FitResult(BaseModel):
    """Ground capacitance recovered from a measured fundamental frequency."""

    model_config = ConfigDict(frozen=True)

    c_0: float
    residual_hz: float
    iterations: int
    bracket: Tuple[float, float]
    n_junctions: int = 0
    f1_hz: float = 0.0

    @model_validator(mode="after")
    def _inside_bracket(self) -> C0FitResult:
        low, high = self.bracket
        if not low <= self.c_0 <= high:
            raise ValueError("c_0 outside of the reported bracket")
        return self

    def record(self) -> dict:
        return {
            "n_junctions": self.n_junctions,
            "c0_af": self.c_0 * 1e18,
            "residual_hz": self.residual_hz,
            "iterations": self.iterations,
            "bracket_af": [self.bracket[0] * 1e18, self.bracket[1] * 1e18],
            "f1_ghz": self.f1_hz / 1e9,
        }


class ModeRecord(BaseModel):
    """Serializable summary of a mode solve."""

    n_junctions: int
    frequencies_ghz: List[float]
    n_zero_modes: int = 0
    grounded: bool = False
    max_relative_deviation: float = 0.0
