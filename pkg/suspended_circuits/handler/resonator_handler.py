# -*- encoding: utf-8 -*-
"""Hanger resonator fitting, photon-number calibration and self-Kerr slopes."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import lmfit
import numpy as np
from scipy import linalg, stats

from suspended_circuits.dto.resonator import HangerFit, KerrFit, KerrRow, S21Trace
from suspended_circuits.handler.base_handler import AnalysisHandler
from suspended_circuits.handler.circuit_handler import dbm_to_watt
from suspended_circuits.schema.exceptions import (
    ConvergenceError,
    InputError,
    InsufficientDataError,
    NoResonanceError,
)

EDGE_FRACTION = 0.1


def _wrap(angle: float) -> float:
    return float(np.angle(np.exp(1j * angle)))


def hanger_response(f, f0, q_i, q_e, phi_asym, amplitude, phase_ref, delay_ns, f_ref):
    """Hanger S21 with the cable delay referenced to ``f_ref``."""
    q_t = 1.0 / (1.0 / q_i + 1.0 / q_e)
    baseline = amplitude * np.exp(1j * (phase_ref + 2e-9 * np.pi * (f - f_ref) * delay_ns))
    return baseline * (
        1.0 - (q_t / q_e) * np.exp(1j * phi_asym) / (1.0 + 2j * q_t * (f - f0) / f0)
    )


def s21_model(f, fit: HangerFit):
    """Evaluate the hanger model for the parameters in ``fit``."""
    f = np.asarray(f, dtype=float)
    baseline = fit.amplitude * np.exp(1j * (fit.phase_offset + 2 * np.pi * f * fit.delay))
    return baseline * (
        1.0
        - (fit.q_t / fit.q_e) * np.exp(1j * fit.phi_asym)
        / (1.0 + 2j * fit.q_t * (f - fit.f0) / fit.f0)
    )


def fit_circle(z: np.ndarray) -> Tuple[complex, float]:
    """Algebraic least-squares circle through complex points.

    Returns:
    -------
        Tuple[complex, float]: centre and radius.
    """
    norm = np.ptp(np.abs(z)) or 1.0
    x, y = z.real / norm, z.imag / norm
    w = x**2 + y**2
    mx, my, mw, n = x.sum(), y.sum(), w.sum(), x.size
    moments = np.array([
        [w @ w, x @ w, y @ w, mw],
        [w @ x, x @ x, y @ x, mx],
        [w @ y, x @ y, y @ y, my],
        [mw, mx, my, n],
    ])
    constraint = np.array([
        [4 * mw, 2 * mx, 2 * my, 0],
        [2 * mx, n, 0, 0],
        [2 * my, 0, n, 0],
        [0, 0, 0, 0],
    ])
    values, vectors = linalg.eig(moments, constraint)
    values = np.real(values)
    admissible = np.where(np.isfinite(values) & (values >= -1e-12))[0]
    if admissible.size == 0:
        raise NoResonanceError("no circle found in the complex plane")
    a, b, c, d = np.real(vectors[:, admissible[np.argmin(values[admissible])]])
    centre = complex(-b / (2 * a), -c / (2 * a)) * norm
    radius = norm * np.sqrt(b**2 + c**2 - 4 * a * d) / (2 * abs(a))
    return centre, float(radius)


class ResonatorHandler(AnalysisHandler):
    """Reduction of measured hanger resonator traces."""

    def _check_dip(self, trace: S21Trace, edges: int) -> None:
        mag = np.abs(trace.s21)
        baseline = np.median(np.concatenate([mag[:edges], mag[-edges:]]))
        depth = float(np.max(np.abs(mag - baseline)))
        noise = float(np.std(np.diff(mag))) / np.sqrt(2)
        if depth <= 3 * noise or depth == 0:
            raise NoResonanceError(
                f"no resonance in trace {trace.name or '<unnamed>'}: dip depth "
                f"{depth:.3g} within 3 x noise {noise:.3g}",
            )

    def initial_guess(self, trace: S21Trace) -> HangerFit:
        """Circle-fit estimate of the hanger parameters."""
        freqs, z = trace.freqs, trace.s21
        edges = max(2, int(EDGE_FRACTION * freqs.size))
        self._check_dip(trace, edges)

        # cable delay from the off-resonant phase ramp
        phase = np.unwrap(np.angle(z))
        outer = np.r_[:edges, freqs.size - edges:freqs.size]
        delay = np.polyfit(freqs[outer], phase[outer], 1)[0] / (2 * np.pi)
        z_flat = z * np.exp(-2j * np.pi * freqs * delay)

        centre, radius = fit_circle(z_flat)
        off_resonant = np.mean(z_flat[outer]) - centre
        p_inf = centre + radius * off_resonant / (abs(off_resonant) or 1.0)
        z_norm = z_flat / p_inf
        diameter = float(np.clip(2 * radius / abs(p_inf), 1e-6, 0.999))
        phi_asym = float(np.angle(1 - centre / p_inf))

        distance = np.abs(z_norm - 1)
        peak = int(np.argmax(distance))
        f0 = float(freqs[peak])
        above = freqs[distance >= distance[peak] / np.sqrt(2)]
        width = float(above[-1] - above[0]) or 3 * float(np.min(np.diff(freqs)))
        q_t = f0 / width
        q_e = q_t / diameter
        q_i = 1.0 / (1.0 / q_t - 1.0 / q_e)
        return HangerFit(
            f0=f0,
            q_i=q_i,
            q_e=q_e,
            phi_asym=phi_asym,
            amplitude=float(abs(p_inf)),
            phase_offset=float(np.angle(p_inf)),
            delay=float(delay),
        )

    def fit_s21(self, trace: S21Trace) -> HangerFit:
        """Fit the hanger model to a complex S21 trace.

        The circle fit seeds a Levenberg-Marquardt fit of the real and imaginary
        parts jointly.

        Args:
        ----
            trace (S21Trace): Measured transmission.

        Returns:
        -------
            HangerFit: Parameters with standard errors from the fit covariance.
        """
        guess = self.initial_guess(trace)
        f_ref = float(np.mean(trace.freqs))
        span = float(trace.freqs[-1] - trace.freqs[0])

        model = lmfit.Model(hanger_response, independent_vars=["f"])
        params = model.make_params()
        params["f0"].set(value=guess.f0, min=trace.freqs[0] - span, max=trace.freqs[-1] + span)
        params["q_i"].set(value=guess.q_i, min=1.0)
        params["q_e"].set(value=guess.q_e, min=1.0)
        params["phi_asym"].set(value=guess.phi_asym, min=-np.pi, max=np.pi)
        params["amplitude"].set(value=guess.amplitude, min=0.0)
        params["phase_ref"].set(value=guess.phase_offset + 2 * np.pi * f_ref * guess.delay)
        params["delay_ns"].set(value=guess.delay * 1e9)
        params["f_ref"].set(value=f_ref, vary=False)

        result = model.fit(
            trace.s21,
            params,
            f=trace.freqs,
            method="leastsq",
            fit_kws={"xtol": 1e-12, "ftol": 1e-12},
        )
        if not result.success:
            raise ConvergenceError(
                f"S21 fit of {trace.name or '<unnamed>'} did not converge: "
                f"{result.message} (residual sum of squares {result.chisqr:.3g})",
            )
        values = result.params
        delay = values["delay_ns"].value * 1e-9
        stderr = {
            name: float(values[name].stderr)
            for name in ("f0", "q_i", "q_e", "phi_asym", "amplitude")
            if values[name].stderr is not None
        }
        if values["delay_ns"].stderr is not None:
            stderr["delay"] = float(values["delay_ns"].stderr) * 1e-9
        fit = HangerFit(
            f0=values["f0"].value,
            q_i=values["q_i"].value,
            q_e=values["q_e"].value,
            phi_asym=_wrap(values["phi_asym"].value),
            amplitude=values["amplitude"].value,
            phase_offset=_wrap(values["phase_ref"].value - 2 * np.pi * f_ref * delay),
            delay=delay,
            stderr=stderr,
        )
        self.logger.debug(
            f"S21 fit {trace.name}: f0={fit.f0 / 1e9:.6f} GHz, Qi={fit.q_i:.4g}, "
            f"Qe={fit.q_e:.4g} ({result.nfev} evaluations)",
        )
        return fit

    def photons_from_power(
        self, power_dbm: float, attenuation_db: float, fit: HangerFit,
    ) -> float:
        """Mean on-resonance photon number of a hanger-coupled resonator."""
        power = dbm_to_watt(power_dbm - attenuation_db)
        omega = 2 * np.pi * fit.f0
        return float(2 * fit.q_t**2 * power / (fit.q_e * self.constants.hbar * omega**2))

    def apply_attenuation_correction(
        self, room_temp_atten_db: float, correction_db: Optional[float] = None,
    ) -> float:
        """Cold line attenuation from the room-temperature calibration."""
        if correction_db is None:
            correction_db = self.settings.attenuation_correction_db
        return room_temp_atten_db - correction_db

    def remove_attenuation_correction(
        self, cold_atten_db: float, correction_db: Optional[float] = None,
    ) -> float:
        if correction_db is None:
            correction_db = self.settings.attenuation_correction_db
        return cold_atten_db + correction_db

    @staticmethod
    def anchor_index(photon_numbers: Sequence[float]) -> int:
        """Index of the point closest to one photon."""
        return int(np.argmin(np.abs(np.asarray(photon_numbers, dtype=float) - 1.0)))

    def fit_kerr(
        self,
        points: Sequence[Tuple[float, float]],
        anchor: Optional[int] = None,
        window: Optional[Tuple[int, int]] = None,
    ) -> KerrFit:
        """Linear fit of resonance frequency against photon number.

        Args:
        ----
            points (Sequence[Tuple[float, float]]): (photon number, f0 in Hz), in
                order of increasing drive power.
            anchor (int): Index of the point at n ~ 1; located when omitted.
            window (Tuple[int, int]): Steps taken before and after the anchor.

        Returns:
        -------
            KerrFit: Intercept in Hz and self-Kerr slope in kHz per photon.
        """
        if len(points) == 0:
            raise InsufficientDataError("no points to fit a Kerr slope to")
        photons = np.array([p[0] for p in points], dtype=float)
        freqs = np.array([p[1] for p in points], dtype=float)
        if anchor is None:
            anchor = self.anchor_index(photons)
        if not 0 <= anchor < photons.size:
            raise InputError(f"anchor index {anchor} outside of {photons.size} points")
        before, after = window or (
            self.settings.kerr_window_before, self.settings.kerr_window_after,
        )
        selected = slice(max(anchor - before, 0), min(anchor + after + 1, photons.size))
        x, y = photons[selected], freqs[selected]
        if x.size < 3:
            raise InsufficientDataError(
                f"Kerr fit needs at least 3 points in the window, got {x.size}",
            )
        if np.ptp(x) == 0:
            raise InsufficientDataError("photon numbers in the Kerr window are all equal")
        line = stats.linregress(x, y)
        return KerrFit(
            f_intercept=float(line.intercept),
            k_self=float(-line.slope / 1e3) + 0.0,
            k_self_stderr=float(line.stderr / 1e3),
            fit_window=(float(x.min()), float(x.max())),
            n_points=int(x.size),
        )

    @staticmethod
    def anchor_quality_stats(fits: Sequence[HangerFit], anchor: int) -> dict:
        """Mean and spread of Qi and Qe at the anchor and its neighbours."""
        chosen = fits[max(anchor - 1, 0): anchor + 2]
        q_i = np.array([fit.q_i for fit in chosen])
        q_e = np.array([fit.q_e for fit in chosen])
        ddof = 1 if len(chosen) > 1 else 0
        return {
            "q_i_mean": float(q_i.mean()),
            "q_i_std": float(q_i.std(ddof=ddof)),
            "q_e_mean": float(q_e.mean()),
            "q_e_std": float(q_e.std(ddof=ddof)),
        }

    def kerr_pipeline(
        self,
        traces: Sequence[S21Trace],
        room_attenuation_db: Optional[float] = None,
        name: str = "",
    ) -> Tuple[KerrRow, List[dict]]:
        """Fit every trace of a power sweep and extract the self-Kerr slope.

        Returns the summary row and one record per trace.
        """
        if any(trace.power_dbm is None for trace in traces):
            raise InputError("every trace of a power sweep needs power_dbm")
        ordered = sorted(traces, key=lambda trace: trace.power_dbm)
        fits = [self.fit_s21(trace) for trace in ordered]
        photons = []
        for trace, fit in zip(ordered, fits):
            attenuation = (
                trace.attenuation_db if room_attenuation_db is None
                else self.apply_attenuation_correction(room_attenuation_db)
            )
            photons.append(self.photons_from_power(trace.power_dbm, attenuation, fit))
        anchor = self.anchor_index(photons)
        kerr = self.fit_kerr([(n, fit.f0) for n, fit in zip(photons, fits)], anchor=anchor)
        self.logger.info(
            f"Kerr sweep {name}: K = {kerr.k_self:.3f} +- {kerr.k_self_stderr:.3f} kHz/photon"
            f" over {kerr.n_points} powers",
        )
        row = KerrRow(
            name=name,
            k_self_khz=kerr.k_self,
            k_self_stderr_khz=kerr.k_self_stderr,
            f_intercept_ghz=kerr.f_intercept / 1e9,
            anchor_power_dbm=float(ordered[anchor].power_dbm),
            anchor_photons=float(photons[anchor]),
            **self.anchor_quality_stats(fits, anchor),
        )
        per_trace = [
            {"name": trace.name, "power_dbm": trace.power_dbm, "photons": n, **fit.record()}
            for trace, n, fit in zip(ordered, photons, fits)
        ]
        return row, per_trace
