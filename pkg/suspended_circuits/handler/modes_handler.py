# -*- encoding: utf-8 -*-
"""Normal modes of JJ arrays and ground-capacitance extraction."""
from __future__ import annotations

from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from suspended_circuits.dto.core import ArrayCircuitSpec, ModeSpectrum
from suspended_circuits.dto.modes import C0FitResult
from suspended_circuits.handler.base_handler import AnalysisHandler
from suspended_circuits.handler.circuit_handler import (
    CircuitHandler,
    check_positive_definite,
)
from suspended_circuits.schema.exceptions import (
    BracketError,
    ConvergenceError,
    DegenerateCircuitError,
)


def analytic_dispersion(k: int, spec: ArrayCircuitSpec) -> float:
    """Closed-form mode frequency (rad/s) of an array with grounded ends.

    Paddle capacitances are ignored.
    """
    n = spec.n_junctions
    if not 0 <= k <= n:
        raise ValueError(f"mode index {k} outside [0, {n}]")
    omega_0 = 1.0 / np.sqrt(spec.l_j * spec.c_j)
    x = 1.0 - np.cos(np.pi * k / n)
    if x == 0.0:
        return 0.0
    return float(omega_0 * np.sqrt(x / (x + spec.c_0 / (2.0 * spec.c_j))))


def relative_change(before: float, after: float) -> float:
    """Relative change (after - before) / before."""
    return (after - before) / before


class ModesHandler(AnalysisHandler):
    """Generalized eigenproblem solver and C0 inversion."""

    def __init__(self, settings, logger, constants=None):
        super().__init__(settings, logger, constants)
        self.circuit = CircuitHandler(settings, logger, constants)

    @property
    def zero_mode_threshold(self) -> float:
        return 2 * np.pi * self.settings.zero_mode_threshold_mhz * 1e6

    def solve_modes(
        self,
        c_matrix: np.ndarray,
        l_inv_matrix: np.ndarray,
        zero_mode_threshold: Optional[float] = None,
    ) -> ModeSpectrum:
        """Solve M v = w^2 C v by Cholesky reduction to a standard eigenproblem.

        Args:
        ----
            c_matrix (np.ndarray): Capacitance matrix, symmetric positive definite.
            l_inv_matrix (np.ndarray): Inverse inductance matrix.
            zero_mode_threshold (float): Modes below this angular frequency
                are counted as zero modes and dropped.

        Returns:
        -------
            ModeSpectrum: Ascending nonzero frequencies and C-orthonormal modes.
        """
        c_matrix = np.asarray(c_matrix, dtype=float)
        l_inv_matrix = np.asarray(l_inv_matrix, dtype=float)
        if c_matrix.shape != l_inv_matrix.shape or c_matrix.ndim != 2:
            raise DegenerateCircuitError("matrices must be square and of equal size")
        threshold = (
            self.zero_mode_threshold
            if zero_mode_threshold is None else zero_mode_threshold
        )

        chol = check_positive_definite(c_matrix)
        reduced = linalg.solve_triangular(chol, l_inv_matrix, lower=True)
        reduced = linalg.solve_triangular(chol, reduced.T, lower=True)
        reduced = 0.5 * (reduced + reduced.T)
        eigenvalues, vectors = linalg.eigh(reduced)
        mode_vectors = linalg.solve_triangular(chol.T, vectors, lower=False)

        zero = eigenvalues < threshold**2
        n_zero = int(np.count_nonzero(zero))
        if n_zero > 1:
            raise DegenerateCircuitError(
                f"degenerate circuit: {n_zero} zero modes in a connected chain",
            )
        return ModeSpectrum(
            frequencies=np.sqrt(eigenvalues[~zero]),
            mode_vectors=mode_vectors[:, ~zero],
            n_zero_modes=n_zero,
        )

    def solve_spec(self, spec: ArrayCircuitSpec) -> ModeSpectrum:
        return self.solve_modes(
            self.circuit.build_capacitance_matrix(spec),
            self.circuit.build_inverse_inductance_matrix(spec),
        )

    def solve_grounded(self, spec: ArrayCircuitSpec) -> ModeSpectrum:
        return self.solve_modes(*self.circuit.grounded_chain(spec))

    def analytic_spectrum(self, spec: ArrayCircuitSpec) -> np.ndarray:
        """Closed-form frequencies (rad/s) for k = 1..N-1."""
        return np.array(
            [analytic_dispersion(k, spec) for k in range(1, spec.n_junctions)],
        )

    def forward_fundamental(self, spec: ArrayCircuitSpec) -> float:
        """Lowest nonzero mode frequency of the full paddle circuit, in Hz."""
        return self.solve_spec(spec).fundamental_hz

    def fit_c0(
        self,
        measured_f1: float,
        spec_without_c0: ArrayCircuitSpec,
        bracket: Optional[Tuple[float, float]] = None,
        tol: Optional[float] = None,
    ) -> C0FitResult:
        """Find the ground capacitance that reproduces a measured fundamental.

        The fundamental decreases monotonically with C0, so a bisection on a
        logarithmic scale is guaranteed to converge inside a straddling bracket.
        """
        low, high = bracket or self.settings.c0_bracket_farad
        tol = self.settings.c0_tol_hz if tol is None else tol
        f_at_low = self.forward_fundamental(spec_without_c0.with_c0(low))
        f_at_high = self.forward_fundamental(spec_without_c0.with_c0(high))
        if not f_at_high <= measured_f1 <= f_at_low:
            raise BracketError(
                f"bracket error: C0 in [{low * 1e18:g}, {high * 1e18:g}] aF gives "
                f"f1 in [{f_at_high / 1e9:.6f}, {f_at_low / 1e9:.6f}] GHz, which does "
                f"not contain {measured_f1 / 1e9:.6f} GHz; try a wider bracket such "
                f"as [{low * 1e17:g}, {high * 1e19:g}] aF",
            )

        for c_0, f in ((low, f_at_low), (high, f_at_high)):
            if abs(f - measured_f1) < tol:
                return C0FitResult(
                    c_0=c_0, residual_hz=abs(f - measured_f1), iterations=0,
                    bracket=(low, high), n_junctions=spec_without_c0.n_junctions,
                    f1_hz=measured_f1,
                )

        for iteration in range(1, self.settings.c0_max_iterations + 1):
            mid = np.sqrt(low * high)
            f_mid = self.forward_fundamental(spec_without_c0.with_c0(mid))
            residual = f_mid - measured_f1
            self.logger.debug(
                f"fit_c0 iteration {iteration}: C0={mid * 1e18:.6f} aF, "
                f"residual={residual:.1f} Hz",
            )
            if abs(residual) < tol:
                self.logger.info(
                    f"C0 converged to {mid * 1e18:.4f} aF after {iteration} steps",
                )
                return C0FitResult(
                    c_0=float(mid), residual_hz=float(abs(residual)),
                    iterations=iteration, bracket=(float(low), float(high)),
                    n_junctions=spec_without_c0.n_junctions, f1_hz=measured_f1,
                )
            if residual > 0:
                low = mid
            else:
                high = mid
        raise ConvergenceError(
            f"no convergence: C0 bisection exceeded {self.settings.c0_max_iterations} "
            f"iterations (last residual {residual:.3g} Hz)",
        )
