# -*- encoding: utf-8 -*-
"""Room-temperature probe Data Transfer Objects."""
from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class ProbeRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_junctions: int = Field(ge=1)
    resistances: Tuple[float, ...]

    @field_validator("resistances")
    @classmethod
    def _positive(cls, value):
        if len(value) == 0 or any(r <= 0 for r in value):
            raise ValueError("resistances must be a non-empty list of positive values")
        return value


class ProbeDataset(BaseModel):
    """Two-point resistances grouped by junction count."""

    model_config = ConfigDict(frozen=True)

    records: List[ProbeRecord]

    @classmethod
    def from_pairs(cls, n_junctions, resistances) -> ProbeDataset:
        grouped: Dict[int, List[float]] = {}
        for n, r in zip(n_junctions, resistances):
            grouped.setdefault(int(n), []).append(float(r))
        return cls(
            records=[
                ProbeRecord(n_junctions=n, resistances=tuple(values))
                for n, values in sorted(grouped.items())
            ],
        )

    @property
    def distinct_counts(self) -> int:
        return len({record.n_junctions for record in self.records})

    def scaled(self, factor: float) -> ProbeDataset:
        return ProbeDataset(
            records=[
                ProbeRecord(
                    n_junctions=record.n_junctions,
                    resistances=tuple(r * factor for r in record.resistances),
                )
                for record in self.records
            ],
        )


class ProbeFit(BaseModel):
    """Parallel resistance model fit: junction chain in parallel with substrate."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r_junction: float = Field(gt=0)
    r_substrate: float = Field(gt=0)
    covariance: np.ndarray

    def record(self) -> Dict[str, object]:
        return {
            "r_junction_ohm": self.r_junction,
            "r_substrate_kohm": self.r_substrate / 1e3,
            "covariance": self.covariance,
        }


class ProbeStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    std: float
    ratio: float
