# -*- encoding: utf-8 -*-
"""Room-temperature probe analysis of junction arrays."""
from __future__ import annotations

from typing import Optional, Sequence

import lmfit
import numpy as np

from suspended_circuits.dto.probe import ProbeDataset, ProbeFit, ProbeStats
from suspended_circuits.handler.base_handler import AnalysisHandler
from suspended_circuits.schema.exceptions import (
    ConvergenceError,
    InputError,
    SingularFitError,
)


def parallel_model(n, r_j: float, r_sub: float):
    """Chain of ``n`` junctions in parallel with a substrate leakage path."""
    chain = np.asarray(n, dtype=float) * r_j
    return chain * r_sub / (chain + r_sub)


class ProbeHandler(AnalysisHandler):
    """Ambegaokar-Baratoff conversions and the parallel resistance model."""

    def _gap(self, gap: Optional[float]) -> float:
        gap = self.settings.gap_ev if gap is None else gap
        if gap <= 0:
            raise InputError(f"superconducting gap must be positive, got {gap} eV")
        return gap

    def ab_critical_current(self, r_n: float, gap: Optional[float] = None) -> float:
        """Critical current from the normal-state resistance.

        Args:
        ----
            r_n (float): Normal-state resistance in ohm.
            gap (float): Superconducting gap in eV; the configured gap when omitted.

        Returns:
        -------
            float: I_c in ampere.
        """
        if r_n <= 0:
            raise InputError(f"normal-state resistance must be positive, got {r_n}")
        delta = self._gap(gap) * self.constants.electron_charge
        return np.pi * delta / (2 * self.constants.electron_charge * r_n)

    def junction_inductance(self, i_c: float) -> float:
        """Josephson inductance Phi_0 / (2 pi I_c)."""
        if i_c <= 0:
            raise InputError(f"critical current must be positive, got {i_c}")
        return self.constants.flux_quantum / (2 * np.pi * i_c)

    def l_j_from_resistance(self, r_n: float, gap: Optional[float] = None) -> float:
        return self.junction_inductance(self.ab_critical_current(r_n, gap))

    def resistance_for_inductance(self, l_j: float, gap: Optional[float] = None) -> float:
        """Normal-state resistance that gives the junction inductance ``l_j``."""
        if l_j <= 0:
            raise InputError(f"junction inductance must be positive, got {l_j}")
        i_c = self.constants.flux_quantum / (2 * np.pi * l_j)
        return np.pi * self._gap(gap) / (2 * i_c)

    def fit_probe(self, dataset: ProbeDataset) -> ProbeFit:
        """Weighted least-squares fit of the parallel resistance model.

        Both resistances are fitted as logarithms, which keeps them positive.
        Counts with repeated measurements are weighted by 1/sigma^2 when every
        count has a non-zero spread; otherwise all counts weigh the same.
        """
        if dataset.distinct_counts < 2:
            raise SingularFitError(
                "singular fit: the parallel model needs at least 2 distinct junction counts",
            )
        counts = np.array([record.n_junctions for record in dataset.records], dtype=float)
        means = np.array([np.mean(record.resistances) for record in dataset.records])
        spreads = np.array([
            np.std(record.resistances, ddof=1) if len(record.resistances) > 1 else 0.0
            for record in dataset.records
        ])
        sigma = spreads if np.all(spreads > 0) else np.ones_like(means)

        # 1/R is linear in 1/n: slope 1/r_j, intercept 1/r_sub
        slope, intercept = np.polyfit(1.0 / counts, 1.0 / means, 1)
        r_j_guess = 1.0 / slope if slope > 0 else means.min() / counts.min()
        r_sub_guess = 1.0 / intercept if intercept > 0 else 10.0 * means.max()

        params = lmfit.Parameters()
        params.add("log_r_j", value=np.log(r_j_guess))
        params.add("log_r_sub", value=np.log(r_sub_guess))

        def residual(p):
            model = parallel_model(counts, np.exp(p["log_r_j"].value), np.exp(p["log_r_sub"].value))
            return (model - means) / sigma

        max_nfev = self.settings.fit_max_iterations
        result = lmfit.minimize(
            residual, params, method="leastsq", max_nfev=max_nfev, xtol=1e-12, ftol=1e-12,
        )
        if not result.success:
            raise ConvergenceError(
                f"probe fit did not converge: {result.message} "
                f"(chi-square {result.chisqr:.3g})",
            )
        r_j = float(np.exp(result.params["log_r_j"].value))
        r_sub = float(np.exp(result.params["log_r_sub"].value))
        if result.covar is None:
            self.logger.warning("probe fit returned no covariance estimate")
            covariance = np.full((2, 2), np.nan)
        else:
            jacobian = np.diag([r_j, r_sub])
            covariance = jacobian @ result.covar @ jacobian
        self.logger.info(
            f"probe fit: r_j = {r_j:.1f} ohm, r_sub = {r_sub / 1e3:.1f} kohm "
            f"from {counts.size} junction counts",
        )
        return ProbeFit(r_junction=r_j, r_substrate=r_sub, covariance=covariance)

    @staticmethod
    def probe_stats(resistances: Sequence[float]) -> ProbeStats:
        """Sample mean, standard deviation and their ratio."""
        values = np.asarray(resistances, dtype=float)
        if values.size == 0:
            raise InputError("probe statistics need at least one resistance")
        mean = float(values.mean())
        std = float(values.std(ddof=1)) if values.size > 1 else 0.0
        return ProbeStats(mean=mean, std=std, ratio=std / mean)
