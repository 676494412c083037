# -*- encoding: utf-8 -*-
"""Fluxonium spectra, dispersive shift and thermal-photon dephasing.

Energies are E/h in GHz. The external flux sits inside the cosine,
H = 4 E_C n^2 - E_J cos(phi - phi_ext) + E_L phi^2 / 2, so the harmonic
basis of the inductive part does not move with flux.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import lmfit
import numpy as np
from scipy import linalg

from suspended_circuits.dto.core import FluxoniumParams
from suspended_circuits.dto.fluxonium import (
    DephasingInputs,
    DephasingResult,
    DispersiveShift,
    FluxoniumFit,
    FluxoniumSolution,
    SpectroscopyPoint,
)
from suspended_circuits.handler.base_handler import AnalysisHandler
from suspended_circuits.schema.exceptions import (
    ConvergenceError,
    InputError,
    ResonanceProximityError,
    UnidentifiableError,
)

GHZ = 1e9
CONVERGENCE_LEVELS = 6
RESIDUAL_STEP_GHZ = 1e-9


@lru_cache(maxsize=64)
def _harmonic_basis(dim: int, e_c: float, e_l: float):
    """Operators of the inductive oscillator truncated to ``dim`` levels.

    Returns the oscillator energies, the eigen-decomposition of the phase
    operator and the (real) matrix of a^dagger - a.
    """
    lowering = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    phi_zpf = (2.0 * e_c / e_l) ** 0.25
    phase = phi_zpf * (lowering + lowering.T)
    phase_points, phase_vectors = linalg.eigh(phase)
    oscillator = np.sqrt(8.0 * e_l * e_c) * (np.arange(dim) + 0.5)
    for arr in (phase_points, phase_vectors, oscillator):
        arr.setflags(write=False)
    return oscillator, phase_points, phase_vectors, lowering.T - lowering


class FluxoniumHandler(AnalysisHandler):
    """Harmonic-basis fluxonium solver and the quantities derived from it."""

    @property
    def tol_ghz(self) -> float:
        return self.settings.fluxonium_tol_khz * 1e-6

    def _solve(self, params: FluxoniumParams, dim: int) -> Tuple[np.ndarray, np.ndarray]:
        oscillator, points, vectors, ladder = _harmonic_basis(dim, params.e_c, params.e_l)
        cos_term = (vectors * np.cos(points - params.phi_ext)) @ vectors.T
        hamiltonian = np.diag(oscillator) - params.e_j * cos_term
        energies, states = linalg.eigh(hamiltonian)
        n_zpf = (params.e_l / (32.0 * params.e_c)) ** 0.25
        n_matrix = n_zpf * np.abs(states.T @ ladder @ states)
        return energies - energies[0], n_matrix

    def _levels(self, params: FluxoniumParams, dim: int) -> np.ndarray:
        return self._solve(params, dim)[0][:CONVERGENCE_LEVELS]

    def is_converged(self, params: FluxoniumParams, dim: int) -> bool:
        """Low levels move by less than the tolerance when the basis grows."""
        step = self.settings.fluxonium_dim_step
        delta = self._levels(params, dim) - self._levels(params, dim + step)
        return bool(np.max(np.abs(delta)) < self.tol_ghz)

    def auto_dim(self, params: FluxoniumParams) -> Tuple[int, bool]:
        """Smallest doubling of the start dimension that meets the convergence test."""
        cap = self.settings.fluxonium_dim_cap
        dim = min(self.settings.fluxonium_dim_start, cap)
        while True:
            if self.is_converged(params, dim):
                return dim, True
            if dim >= cap:
                self.logger.warning(
                    f"fluxonium basis not converged at dim cap {cap} for {params}",
                )
                return cap, False
            dim = min(2 * dim, cap)

    def diagonalize(
        self,
        params: FluxoniumParams,
        dim: Optional[int] = None,
        check: bool = True,
    ) -> FluxoniumSolution:
        """Diagonalize the fluxonium Hamiltonian.

        Args:
        ----
            params (FluxoniumParams): Energies and flux bias.
            dim (int): Basis size; chosen automatically when omitted.
            check (bool): Run the convergence test for an explicit ``dim``.

        Returns:
        -------
            FluxoniumSolution: Energies relative to the ground state and |n_ij|.
        """
        if dim is None:
            dim, converged = self.auto_dim(params)
        else:
            if dim < 10:
                raise InputError(f"basis dimension must be at least 10, got {dim}")
            converged = self.is_converged(params, dim) if check else False
        energies, n_matrix = self._solve(params, dim)
        return FluxoniumSolution(
            energies=energies, n_matrix=n_matrix, dim_used=dim, converged=converged,
        )

    def transition(
        self,
        params: FluxoniumParams,
        i: int,
        j: int,
        dim: Optional[int] = None,
    ) -> float:
        """Transition frequency E_j - E_i in GHz."""
        if i == j:
            return 0.0
        solution = self.diagonalize(params, dim)
        if max(i, j) >= solution.dim_used // 2:
            raise InputError(
                f"transition {i}-{j} needs a basis larger than {solution.dim_used}",
            )
        return solution.transition(i, j)

    def spectrum_sweep(
        self,
        params: FluxoniumParams,
        phi_list: Sequence[float],
        transitions: Sequence[Tuple[int, int]],
        dim: Optional[int] = None,
    ) -> List[Dict[str, float]]:
        """Transition frequencies (GHz) for every flux bias in ``phi_list``."""
        if dim is None:
            # the extremes of the flux dependence bound the basis requirement
            dim = max(self.auto_dim(params.at_flux(phi))[0] for phi in (0.0, np.pi))
        table = []
        for phi in phi_list:
            energies, _ = self._solve(params.at_flux(phi), dim)
            row = {"phi_ext": float(phi), "phi_ext_over_2pi": float(phi) / (2 * np.pi)}
            for i, j in transitions:
                row[f"f_{i}{j}_ghz"] = float(energies[j] - energies[i])
            table.append(row)
        return table

    def _dispersive_terms(
        self,
        solution: FluxoniumSolution,
        g: float,
        omega_r: float,
        levels: int,
    ) -> Tuple[np.ndarray, float, Tuple[int, int]]:
        """Per-level contributions to chi_01 and the largest g|n_il| / |omega_il - omega_r|."""
        omega = 2 * np.pi * GHZ * solution.energies[: levels + 1]
        n_abs = solution.n_matrix[: levels + 1, : levels + 1]
        guard = 2 * np.pi * self.settings.resonance_guard_mhz * 1e6

        terms = np.zeros(levels + 1)
        worst, worst_pair = 0.0, (0, 1)
        for i, sign in ((0, 1.0), (1, -1.0)):
            for level in range(levels + 1):
                if level == i:
                    continue
                omega_il = omega[level] - omega[i]
                detuning = abs(abs(omega_il) - omega_r)
                if detuning < guard:
                    raise ResonanceProximityError(
                        f"transition {i}-{level} at {abs(omega_il) / (2 * np.pi * GHZ):.6f}"
                        f" GHz lies within {self.settings.resonance_guard_mhz} MHz of the"
                        " resonator",
                    )
                ratio = g * n_abs[i, level] / detuning
                if ratio > worst:
                    worst, worst_pair = ratio, (i, level)
                terms[level] += (
                    sign * n_abs[i, level] ** 2 * 2 * omega_il / (omega_il**2 - omega_r**2)
                )
        return g**2 * terms, float(worst), worst_pair

    def dispersive_shift(
        self,
        params: FluxoniumParams,
        g: float,
        omega_r: float,
        dim: Optional[int] = None,
        levels: Optional[int] = None,
    ) -> DispersiveShift:
        """Second-order dispersive shift of the 0-1 transition.

        The sum is only meaningful while every included transition stays
        detuned from the resonator by much more than its coupling
        g|n_il|. Above ``dispersive_ratio_max`` a warning is logged, at a
        ratio of one the shift is refused.

        Args:
        ----
            params (FluxoniumParams): Qubit parameters.
            g (float): Charge coupling strength, rad/s.
            omega_r (float): Resonator angular frequency, rad/s.
            dim (int): Basis size; chosen automatically when omitted.
            levels (int): Highest qubit level included in the sums.

        Returns:
        -------
            DispersiveShift: chi_01 and the estimated truncation remainder, rad/s.
        """
        levels = self.settings.dispersive_levels if levels is None else levels
        solution = self.diagonalize(params, dim)
        if levels >= solution.dim_used:
            raise InputError(f"{levels} levels exceed the basis size {solution.dim_used}")
        terms, ratio, (i, level) = self._dispersive_terms(solution, g, omega_r, levels)
        if ratio >= 1:
            raise ResonanceProximityError(
                f"transition {i}-{level} is not dispersive at phi_ext={params.phi_ext:.6f}:"
                f" g|n|/detuning = {ratio:.3f}",
            )
        if ratio > self.settings.dispersive_ratio_max:
            self.logger.warning(
                f"transition {i}-{level} has g|n|/detuning = {ratio:.3f} above "
                f"{self.settings.dispersive_ratio_max}, chi_01 is outside the dispersive regime",
            )
        chi = float(np.sum(terms))

        # parity selection rules zero every other term at the symmetry points
        tail = np.abs(terms[terms != 0])[-2:]
        if tail.size == 2 and tail[1] < tail[0]:
            shrink = tail[1] / tail[0]
            remainder = tail[1] * shrink / (1 - shrink)
        else:
            remainder = float(np.sum(tail))
        if remainder > 0.01 * abs(chi):
            self.logger.warning(
                f"dispersive sum truncated at level {levels} leaves remainder "
                f"{remainder / (2 * np.pi) / 1e6:.4f} MHz",
            )
        return DispersiveShift(
            chi_01=chi,
            remainder=float(remainder),
            levels=levels,
            phi_ext=params.phi_ext,
            dispersive_ratio=ratio,
        )

    def operating_point(
        self,
        params: FluxoniumParams,
        g: float,
        omega_r: float,
        dim: Optional[int] = None,
        levels: Optional[int] = None,
    ) -> float:
        """Flux bias nearest half flux quantum where the dispersive sum holds.

        Steps down from phi_ext = pi until the largest g|n_il| / detuning
        falls to ``dispersive_ratio_max``, then bisects onto that crossing.
        Returns phi_ext in radians.
        """
        levels = self.settings.dispersive_levels if levels is None else levels
        limit = self.settings.dispersive_ratio_max
        if dim is None:
            dim = max(self.auto_dim(params.at_flux(phi))[0] for phi in (0.0, np.pi))
        if levels >= dim:
            raise InputError(f"{levels} levels exceed the basis size {dim}")

        def ratio(phi: float) -> float:
            solution = self.diagonalize(params.at_flux(phi), dim, check=False)
            try:
                return self._dispersive_terms(solution, g, omega_r, levels)[1]
            except ResonanceProximityError:
                return np.inf

        high = np.pi
        if ratio(high) <= limit:
            return high
        step = np.pi * self.settings.operating_point_step_pi
        for low in np.arange(np.pi - step, -0.5 * step, -step):
            if ratio(low) <= limit:
                break
            high = low
        else:
            raise ResonanceProximityError(
                f"no flux bias in [0, pi] keeps g|n|/detuning below {limit}",
            )

        while high - low > 1e-7:
            middle = 0.5 * (low + high)
            if ratio(middle) <= limit:
                low = middle
            else:
                high = middle
        self.logger.info(
            f"dispersive operating point at phi_ext/pi={low / np.pi:.5f} "
            f"(g|n|/detuning <= {limit})",
        )
        return float(low)

    @staticmethod
    def thermal_dephasing(inputs: DephasingInputs) -> DephasingResult:
        """Dephasing rate (rad/s) from thermal photon fluctuations in the resonator."""
        if inputs.n_th == 0:
            return DephasingResult(gamma_phi=0.0, t_phi=np.inf)
        ratio = inputs.chi_01 / inputs.kappa_r
        radicand = (1 + 1j * ratio) ** 2 + 4j * ratio * inputs.n_th
        gamma = 0.5 * inputs.kappa_r * float(np.real(np.sqrt(radicand) - 1))
        t_phi = np.inf if gamma <= 0 else 1.0 / gamma
        return DephasingResult(gamma_phi=gamma, t_phi=t_phi)

    def dephasing_sweep(
        self,
        kappa_r: float,
        chi_01: float,
        n_th_list: Sequence[float],
    ) -> List[Dict[str, object]]:
        rows = []
        for n_th in n_th_list:
            result = self.thermal_dephasing(
                DephasingInputs(kappa_r=kappa_r, chi_01=chi_01, n_th=float(n_th)),
            )
            rows.append({"n_th": float(n_th), **result.record()})
        return rows

    @staticmethod
    def quality_factor(f: float, t1: float) -> float:
        """Quality factor 2 pi f T1."""
        if f <= 0 or t1 < 0:
            raise InputError("quality factor needs f > 0 and T1 >= 0")
        return 2 * np.pi * f * t1

    def phase_grid_energies(
        self,
        params: FluxoniumParams,
        n_points: Optional[int] = None,
        half_width: Optional[float] = None,
        n_levels: int = CONVERGENCE_LEVELS,
    ) -> np.ndarray:
        """Brute-force energies on a uniform phase grid (sinc kinetic operator)."""
        n_points = n_points or self.settings.grid_points
        half_width = half_width or self.settings.grid_half_width_pi * np.pi
        phase = np.linspace(-half_width, half_width, n_points)
        step = phase[1] - phase[0]
        offsets = np.arange(n_points, dtype=float)
        column = np.empty(n_points)
        column[0] = np.pi**2 / 3.0
        column[1:] = 2.0 * (-1.0) ** offsets[1:] / offsets[1:] ** 2
        hamiltonian = linalg.toeplitz(column * (4.0 * params.e_c / step**2))
        potential = 0.5 * params.e_l * phase**2 - params.e_j * np.cos(phase - params.phi_ext)
        hamiltonian[np.diag_indices(n_points)] += potential
        energies = linalg.eigh(
            hamiltonian, eigvals_only=True, subset_by_index=[0, n_levels - 1],
        )
        return energies - energies[0]

    def fit_params(
        self,
        points: Sequence[SpectroscopyPoint],
        initial_guess: FluxoniumParams,
        dim: Optional[int] = None,
    ) -> FluxoniumFit:
        """Least-squares fit of (E_J, E_C, E_L) to measured transition frequencies.

        Levenberg-Marquardt (MINPACK through lmfit) on the frequency residuals.
        """
        dim = dim or self.settings.fit_dim
        distinct_flux = {round(p.phi_ext, 12) for p in points}
        if len(points) < 4 or len(distinct_flux) < 2:
            raise UnidentifiableError(
                "unidentifiable from provided points: need at least 4 points at "
                "2 or more distinct flux biases",
            )
        highest = max(max(p.transition) for p in points)
        if highest >= dim // 2:
            raise InputError(f"transition level {highest} needs a basis larger than {dim}")

        def residual(values) -> np.ndarray:
            trial = FluxoniumParams(
                e_j=values["e_j"], e_c=values["e_c"], e_l=values["e_l"], phi_ext=0.0,
            )
            spectra = {
                phi: self._solve(trial.at_flux(phi), dim)[0] for phi in distinct_flux
            }
            return np.array([
                spectra[round(p.phi_ext, 12)][p.transition[1]]
                - spectra[round(p.phi_ext, 12)][p.transition[0]]
                - p.freq_ghz
                for p in points
            ])

        params = lmfit.Parameters()
        for name in ("e_j", "e_c", "e_l"):
            params.add(name, value=getattr(initial_guess, name), min=1e-6)

        start = residual(params.valuesdict())
        if np.max(np.abs(start)) < 1e-9:
            return FluxoniumFit(
                params=initial_guess.at_flux(0.0),
                residuals_ghz=start.tolist(),
                iterations=0,
                success=True,
            )

        # MINPACK counts evaluations: one per iteration plus one per Jacobian column.
        # Its ftol bounds the relative drop of the squared residual sum, and a
        # 1 Hz change of the rms residual r is a relative drop of 2 * 1 Hz / r.
        max_nfev = self.settings.fit_max_iterations * (len(params) + 1)
        rms_start = float(np.sqrt(np.mean(start**2)))
        result = lmfit.minimize(
            lambda p: residual(p.valuesdict()),
            params,
            method="leastsq",
            max_nfev=max_nfev,
            xtol=1e-8,
            ftol=float(np.clip(2 * RESIDUAL_STEP_GHZ / rms_start, 1e-12, 1e-6)),
        )
        if result.covar is None:
            raise UnidentifiableError(
                "unidentifiable from provided points: singular Jacobian",
            )
        if not result.success and result.nfev >= max_nfev:
            raise ConvergenceError(
                f"fluxonium fit did not converge in {self.settings.fit_max_iterations} iterations "
                f"(chi-square {result.chisqr:.3g} GHz^2)",
            )
        fitted = result.params
        self.logger.info(
            f"fluxonium fit: E_J={fitted['e_j'].value:.4f}, E_C={fitted['e_c'].value:.4f}, "
            f"E_L={fitted['e_l'].value:.4f} GHz after {result.nfev} evaluations",
        )
        return FluxoniumFit(
            params=FluxoniumParams(
                e_j=fitted["e_j"].value,
                e_c=fitted["e_c"].value,
                e_l=fitted["e_l"].value,
                phi_ext=0.0,
            ),
            stderr={
                name: float(fitted[name].stderr)
                if fitted[name].stderr is not None else float("nan")
                for name in ("e_j", "e_c", "e_l")
            },
            residuals_ghz=np.asarray(result.residual).tolist(),
            iterations=int(np.ceil(result.nfev / (len(params) + 1))),
            success=bool(result.success),
        )
