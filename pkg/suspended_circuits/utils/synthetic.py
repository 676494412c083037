# -*- encoding: utf-8 -*-
"""Synthetic measurement data generated from the analysis models."""
from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from suspended_circuits.dto.core import CONSTANTS
from suspended_circuits.dto.fluxonium import SpectroscopyPoint
from suspended_circuits.dto.probe import ProbeDataset
from suspended_circuits.dto.resonator import HangerFit, S21Trace
from suspended_circuits.handler.circuit_handler import dbm_to_watt, watt_to_dbm
from suspended_circuits.handler.probe_handler import parallel_model
from suspended_circuits.handler.resonator_handler import s21_model

if TYPE_CHECKING:
    from suspended_circuits.dto.core import FluxoniumParams
    from suspended_circuits.handler.fluxonium_handler import FluxoniumHandler

# full VNA sweep; at 20 dB SNR over 10 linewidths it pins f0 to about 0.002 linewidths rms
SWEEP_POINTS = 10001


def hanger_trace(
    fit: HangerFit,
    n_points: int = 2001,
    span_linewidths: float = 10.0,
    snr_db: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
    center: Optional[float] = None,
    **trace_fields,
) -> S21Trace:
    """Sample the hanger model around ``center`` (the resonance by default).

    ``snr_db`` compares the resonance diameter with the rms of the added
    complex Gaussian noise.
    """
    center = fit.f0 if center is None else center
    half_span = 0.5 * span_linewidths * fit.linewidth_hz
    freqs = np.linspace(center - half_span, center + half_span, n_points)
    s21 = s21_model(freqs, fit)
    if snr_db is not None:
        rng = rng or np.random.default_rng()
        sigma = fit.amplitude * (fit.q_t / fit.q_e) * 10 ** (-snr_db / 20) / np.sqrt(2)
        s21 = s21 + sigma * (rng.standard_normal(n_points) + 1j * rng.standard_normal(n_points))
    return S21Trace(freqs=freqs, s21=s21, **trace_fields)


def random_hanger(rng: np.random.Generator) -> HangerFit:
    """Hanger parameters drawn from a range typical of the measured resonators."""
    return HangerFit(
        f0=rng.uniform(4e9, 8e9),
        q_i=10 ** rng.uniform(np.log10(2e4), 5.0),
        q_e=10 ** rng.uniform(np.log10(2e4), 5.0),
        phi_asym=rng.uniform(-0.3, 0.3),
        amplitude=rng.uniform(0.5, 1.0),
        phase_offset=rng.uniform(-np.pi, np.pi),
        delay=rng.uniform(0.0, 50e-9),
    )


def photon_power_dbm(photons: float, fit: HangerFit) -> float:
    """Device-plane power (dBm) giving ``photons`` on resonance."""
    omega = 2 * np.pi * fit.f0
    watt = photons * fit.q_e * CONSTANTS.hbar * omega**2 / (2 * fit.q_t**2)
    return float(watt_to_dbm(watt))


def kerr_sweep(
    base: HangerFit,
    k_self_khz: float,
    attenuation_db: float,
    n_steps: int = 12,
    jitter_hz: float = 1e3,
    snr_db: Optional[float] = 60.0,
    rng: Optional[np.random.Generator] = None,
    name: str = "sweep",
) -> List[S21Trace]:
    """Traces of one resonator over 1 dB power steps, starting 1 dB below one photon.

    The resonance of each trace sits at the Kerr-shifted frequency plus
    independent Gaussian jitter of ``jitter_hz``. The attenuation is stored
    on every trace.
    """
    rng = rng or np.random.default_rng()
    p_one = photon_power_dbm(1.0, base) + attenuation_db
    powers = np.round(p_one) - 1.0 + np.arange(n_steps)
    photons = dbm_to_watt(powers - attenuation_db) / dbm_to_watt(p_one - attenuation_db)
    shifts = -k_self_khz * 1e3 * photons
    if jitter_hz:
        shifts = shifts + rng.normal(0.0, jitter_hz, photons.size)
    traces = []
    for power, shift in zip(powers, shifts):
        fit = base.model_copy(update={"f0": base.f0 + shift})
        traces.append(
            hanger_trace(
                fit, n_points=801, snr_db=snr_db, rng=rng, center=base.f0,
                power_dbm=float(power), attenuation_db=attenuation_db,
                name=f"{name}_p{power:g}",
            ),
        )
    return traces


def probe_dataset(
    r_j: float,
    r_sub: float,
    counts: Sequence[int] = (100, 200, 300, 400, 500),
    replicates: int = 1,
    noise: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> ProbeDataset:
    """Parallel-model resistances with multiplicative Gaussian noise."""
    rng = rng or np.random.default_rng()
    n_values, r_values = [], []
    for n in counts:
        ideal = float(parallel_model(n, r_j, r_sub))
        for _ in range(replicates):
            n_values.append(n)
            r_values.append(ideal * (1 + noise * rng.standard_normal()) if noise else ideal)
    return ProbeDataset.from_pairs(n_values, r_values)


def spectroscopy_points(
    handler: FluxoniumHandler,
    params: FluxoniumParams,
    flux_over_2pi: Sequence[float],
    transitions: Sequence[Tuple[int, int]] = ((0, 1), (0, 2), (0, 3)),
    noise_ghz: float = 0.0,
    rng: Optional[np.random.Generator] = None,
    dim: Optional[int] = None,
) -> List[SpectroscopyPoint]:
    """Transition frequencies of ``params`` at the given flux biases."""
    rng = rng or np.random.default_rng()
    dim = dim or handler.settings.fit_dim
    points = []
    for flux in flux_over_2pi:
        solution = handler.diagonalize(params.at_flux(2 * np.pi * flux), dim=dim, check=False)
        for i, j in transitions:
            freq = solution.transition(i, j)
            if noise_ghz:
                freq += rng.normal(0.0, noise_ghz)
            points.append(
                SpectroscopyPoint(phi_ext=2 * np.pi * flux, transition=(i, j), freq_ghz=freq),
            )
    return points
