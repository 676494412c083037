# -*- encoding: utf-8 -*-
"""Measured and simulated device values used as fixtures and reproduction targets.

Capacitance lists are positional: index i belongs to the array with
ARRAY_JUNCTIONS[i] junctions.
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, List, Tuple

from suspended_circuits.dto.core import FEMTO, NANO, ArrayCircuitSpec, FluxoniumParams


class ArrayVariant(Enum):
    """Fabrication variant of a JJ array."""

    SUBSTRATE = "substrate"
    ETCHED = "etched"


ARRAY_JUNCTIONS: List[int] = [500, 400, 300, 200, 100]
C_J_FF = 20.0

L_J_NH: Dict[ArrayVariant, float] = {
    ArrayVariant.SUBSTRATE: 0.91,
    ArrayVariant.ETCHED: 1.10,
}

# fF, simulated
PADDLE_CAPACITANCES_FF: Dict[ArrayVariant, Dict[str, List[float]]] = {
    ArrayVariant.SUBSTRATE: {
        "c_s": [0.51, 0.51, 0.53, 0.53, 0.58],
        "c_c_left": [0.99, 0.94, 0.95, 0.85, 0.93],
        "c_c_right": [0.34, 0.32, 0.31, 0.29, 0.26],
        "c_g_left": [5.89, 5.84, 6.29, 6.37, 7.72],
        "c_g_right": [6.55, 6.43, 6.47, 6.49, 6.41],
    },
    ArrayVariant.ETCHED: {
        "c_s": [0.48, 0.48, 0.50, 0.50, 0.55],
        "c_c_left": [0.99, 0.94, 0.94, 0.85, 0.93],
        "c_c_right": [0.34, 0.32, 0.3, 0.28, 0.26],
        "c_g_left": [5.81, 5.8, 6.26, 6.34, 7.67],
        "c_g_right": [6.46, 6.40, 6.43, 6.46, 6.46],
    },
}

# extracted ground capacitance, aF
GROUND_CAPACITANCE_AF: Dict[ArrayVariant, Dict[int, float]] = {
    ArrayVariant.SUBSTRATE: {300: 118.0, 200: 158.0, 100: 293.0},
    ArrayVariant.ETCHED: {400: 15.0, 300: 14.0, 200: 60.0, 100: 83.0},
}

RELATIVE_C0_CHANGE: Dict[int, float] = {300: -0.88, 200: -0.62, 100: -0.72}

# kHz per photon, suspended arrays; None for the CPW reference
KERR_SLOPES_KHZ: List[Tuple[str, object, float]] = [
    ("CPW", None, 0.0),
    ("R0", 400, 9.0),
    ("R1", 300, 12.0),
    ("R2", 200, 15.4),
    ("R3", 100, 17.5),
]

FLUXONIUM_DEVICES: Dict[str, FluxoniumParams] = {
    "A": FluxoniumParams(e_j=1.32, e_c=0.93, e_l=0.73),
    "B": FluxoniumParams(e_j=2.56, e_c=0.96, e_l=0.78),
    "C": FluxoniumParams(e_j=2.59, e_c=1.01, e_l=0.42),
}

# (qubit frequency Hz back-solved from Q, T1 s, quoted Q)
QUALITY_FACTORS: Dict[str, Tuple[float, float, float]] = {
    "A": (1.38e9, 53e-6, 4.6e5),
    "B": (868e6, 33e-6, 1.8e5),
    "C": (458.6e6, 59e-6, 1.7e5),
}

DEVICE_C_READOUT = {
    "g_ghz": 0.100,
    "f_r_ghz": 7.18,
    "kappa_mhz": 0.8,
    "chi_target_mhz": 1.38,
}

QUBIT_PROBE_STATS_KOHM: Dict[str, Tuple[int, float, float, float]] = {
    "on-substrate, non-etched chip": (24, 55.3, 6.4, 0.12),
    "on-substrate, etched chip": (28, 47.6, 4.5, 0.10),
    "total on-substrate": (52, 52.6, 6.9, 0.13),
    "suspended, etched chip": (28, 50.8, 5.3, 0.10),
}

SUBSTRATE_RESISTANCE_OHM: Dict[ArrayVariant, float] = {
    ArrayVariant.SUBSTRATE: 670e3,
    ArrayVariant.ETCHED: 1000e3,
}


def array_spec(
    variant: ArrayVariant,
    n_junctions: int,
    c_0_af: float = 0.0,
) -> ArrayCircuitSpec:
    """Return the tabulated circuit for one array of the chip."""
    index = ARRAY_JUNCTIONS.index(n_junctions)
    caps = PADDLE_CAPACITANCES_FF[variant]
    return ArrayCircuitSpec(
        n_junctions=n_junctions,
        l_j=L_J_NH[variant] * NANO,
        c_j=C_J_FF * FEMTO,
        c_0=c_0_af * 1e-18,
        **{key: values[index] * FEMTO for key, values in caps.items()},
    )


def table_c0_entries() -> List[Tuple[ArrayVariant, int, float]]:
    return [
        (variant, n, c0)
        for variant, entries in GROUND_CAPACITANCE_AF.items()
        for n, c0 in entries.items()
    ]
