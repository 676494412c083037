# -*- encoding: utf-8 -*-
"""Circuit matrices of a shunted JJ array and unit conversions."""
from __future__ import annotations

from typing import Tuple

import numpy as np
from scipy import constants, linalg

from suspended_circuits.dto.core import ArrayCircuitSpec
from suspended_circuits.handler.base_handler import AnalysisHandler
from suspended_circuits.schema.exceptions import DegenerateCircuitError

# smallest admissible Cholesky pivot, relative to the largest diagonal entry
_PIVOT_RTOL = 1e-12


def dbm_to_watt(dbm):
    """Convert power in dBm to watts."""
    return 1e-3 * np.power(10.0, np.asarray(dbm, dtype=float) / 10.0)


def watt_to_dbm(watt):
    """Convert power in watts to dBm."""
    return 10.0 * np.log10(np.asarray(watt, dtype=float) / 1e-3)


def chain_laplacian(n_nodes: int) -> np.ndarray:
    """Graph Laplacian of a linear chain with ``n_nodes`` nodes."""
    main = np.full(n_nodes, 2.0)
    main[0] = main[-1] = 1.0
    off = -np.ones(n_nodes - 1)
    return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)


def check_positive_definite(c_matrix: np.ndarray) -> np.ndarray:
    """Return the lower Cholesky factor or raise for a degenerate matrix."""
    try:
        chol = linalg.cholesky(c_matrix, lower=True)
    except linalg.LinAlgError as e:
        raise DegenerateCircuitError("capacitance matrix not SPD") from e
    pivots = np.diag(chol) ** 2
    if pivots.min() <= _PIVOT_RTOL * np.abs(np.diag(c_matrix)).max():
        raise DegenerateCircuitError(
            "capacitance matrix not SPD (singular to working precision)",
        )
    return chol


class CircuitHandler(AnalysisHandler):
    """Builds the quadratic (harmonic) circuit model of a shunted JJ array.

    Node ``k`` of the matrices is the flux of island ``k``; nodes 0 and N are
    the capacitor paddles.
    """

    def build_capacitance_matrix(
        self,
        spec: ArrayCircuitSpec,
        check_definite: bool = True,
    ) -> np.ndarray:
        """Capacitance matrix of the kinetic part of the circuit Lagrangian.

        Args:
        ----
            spec (ArrayCircuitSpec): The circuit.
            check_definite (bool): Reject matrices that are not positive definite.

        Returns:
        -------
            np.ndarray: Symmetric (N+1)x(N+1) matrix in farad.
        """
        n = spec.n_junctions
        c_matrix = spec.c_j * chain_laplacian(n + 1)
        interior = np.arange(1, n)
        c_matrix[interior, interior] += spec.c_0
        c_matrix[0, 0] += spec.c_g_left + spec.c_c_left
        c_matrix[n, n] += spec.c_g_right + spec.c_c_right
        c_matrix[0, 0] += spec.c_s
        c_matrix[n, n] += spec.c_s
        c_matrix[0, n] -= spec.c_s
        c_matrix[n, 0] -= spec.c_s
        if check_definite:
            check_positive_definite(c_matrix)
        return c_matrix

    def build_inverse_inductance_matrix(self, spec: ArrayCircuitSpec) -> np.ndarray:
        """Second-order expansion of the junction potentials, in 1/henry."""
        return chain_laplacian(spec.n_junctions + 1) / spec.l_j

    def grounded_chain(self, spec: ArrayCircuitSpec) -> Tuple[np.ndarray, np.ndarray]:
        """Matrices of the chain with both end nodes tied to ground."""
        n = spec.n_junctions
        if n < 2:
            raise DegenerateCircuitError(
                "a grounded chain needs at least two junctions",
            )
        c_matrix = self.build_capacitance_matrix(spec, check_definite=False)
        l_inv = self.build_inverse_inductance_matrix(spec)
        return c_matrix[1:n, 1:n].copy(), l_inv[1:n, 1:n].copy()

    def kinetic_energy(self, spec: ArrayCircuitSpec, flux_rates: np.ndarray) -> float:
        """Kinetic Lagrangian term evaluated term by term for node flux rates."""
        v = np.asarray(flux_rates, dtype=float)
        n = spec.n_junctions
        energy = 0.5 * (spec.c_g_left + spec.c_c_left) * v[0] ** 2
        energy += 0.5 * spec.c_j * np.sum(np.diff(v) ** 2)
        energy += 0.5 * (spec.c_g_right + spec.c_c_right) * v[n] ** 2
        energy += 0.5 * spec.c_0 * np.sum(v[1:n] ** 2)
        energy += 0.5 * spec.c_s * (v[n] - v[0]) ** 2
        return float(energy)

    @staticmethod
    def junction_capacitance(eps_r: float, area_m2: float, thickness_m: float) -> float:
        """Parallel-plate estimate of a junction capacitance."""
        return eps_r * constants.epsilon_0 * area_m2 / thickness_m

    def thermal_photon_number(self, freq_hz: float, temperature_k: float) -> float:
        """Bose-Einstein occupation of a mode at ``freq_hz``."""
        if temperature_k <= 0:
            return 0.0
        x = self.constants.planck_h * freq_hz / (self.constants.boltzmann * temperature_k)
        return float(1.0 / np.expm1(x))
