# -*- encoding: utf-8 -*-
import numpy as np
import pytest
from scipy import constants

from suspended_circuits.dto.resonator import HangerFit, S21Trace
from suspended_circuits.handler.circuit_handler import watt_to_dbm
from suspended_circuits.handler.resonator_handler import fit_circle, s21_model
from suspended_circuits.schema.exceptions import InsufficientDataError, NoResonanceError
from suspended_circuits.utils import synthetic
from suspended_circuits.utils.presets import KERR_SLOPES_KHZ

REFERENCE = HangerFit(
    f0=5.0e9, q_i=3.6e4, q_e=1e5, phi_asym=0.1, amplitude=0.8, phase_offset=0.5,
    delay=20e-9,
)


def test_trace_validation():
    with pytest.raises(ValueError):
        S21Trace(freqs=[1.0, 2.0, 2.0], s21=[1, 1, 1])
    with pytest.raises(ValueError):
        S21Trace(freqs=[1.0, 2.0], s21=[1, 1, 1])


def test_total_quality_factor():
    fit = HangerFit(f0=5e9, q_i=3.6e4, q_e=1e5)
    assert 1 / fit.q_t == pytest.approx(1 / fit.q_i + 1 / fit.q_e, rel=1e-15)
    assert fit.q_t == pytest.approx(2.647e4, rel=1e-3)


def test_model_far_from_resonance_is_baseline():
    far = np.array([1e-3 * REFERENCE.f0, 1e3 * REFERENCE.f0])
    np.testing.assert_allclose(np.abs(s21_model(far, REFERENCE)), REFERENCE.amplitude, rtol=1e-4)


def test_model_on_resonance():
    fit = HangerFit(f0=5e9, q_i=3.6e4, q_e=1e5)
    value = s21_model(fit.f0, fit)
    assert value == pytest.approx(1 - fit.q_t / fit.q_e, rel=1e-12)
    assert abs(value) == pytest.approx(0.7353, abs=1e-4)


def test_circle_fit_recovers_circle():
    theta = np.linspace(0.3, 5.5, 200)
    centre, radius = fit_circle(0.7 - 0.2j + 0.15 * np.exp(1j * theta))
    assert centre == pytest.approx(0.7 - 0.2j, abs=1e-9)
    assert radius == pytest.approx(0.15, rel=1e-9)


def test_noise_free_round_trip(resonator):
    fit = resonator.fit_s21(synthetic.hanger_trace(REFERENCE))
    for name in ("f0", "q_i", "q_e", "amplitude"):
        assert getattr(fit, name) == pytest.approx(getattr(REFERENCE, name), rel=1e-6)
    assert fit.phi_asym == pytest.approx(REFERENCE.phi_asym, abs=1e-6)
    assert fit.delay == pytest.approx(REFERENCE.delay, rel=1e-6)
    assert 1 / fit.q_t == pytest.approx(1 / fit.q_i + 1 / fit.q_e, rel=1e-12)


def test_noisy_round_trips(resonator):
    rng = np.random.default_rng(20)
    for _ in range(100):
        truth = synthetic.random_hanger(rng)
        trace = synthetic.hanger_trace(
            truth, n_points=synthetic.SWEEP_POINTS, snr_db=20.0, rng=rng,
        )
        fit = resonator.fit_s21(trace)
        assert fit.q_i == pytest.approx(truth.q_i, rel=0.05)
        assert fit.q_e == pytest.approx(truth.q_e, rel=0.05)
        assert abs(fit.f0 - truth.f0) < truth.linewidth_hz / 100
        assert set(fit.stderr) >= {"f0", "q_i", "q_e"}


def test_flat_trace_has_no_resonance(resonator):
    trace = S21Trace(freqs=np.linspace(5e9, 5.01e9, 401), s21=np.ones(401, dtype=complex))
    with pytest.raises(NoResonanceError, match="no resonance"):
        resonator.fit_s21(trace)


def test_photon_number_closed_form(resonator):
    fit = HangerFit(f0=5e9, q_i=7.4e4, q_e=1e5)
    power_dbm = float(watt_to_dbm(1e-17))
    expected = 2 * fit.q_t**2 * 1e-17 / (fit.q_e * constants.hbar * (2 * np.pi * 5e9) ** 2)
    assert resonator.photons_from_power(power_dbm, 0.0, fit) == pytest.approx(expected, rel=1e-12)


def test_photon_number_scales_with_power(resonator):
    fit = HangerFit(f0=6e9, q_i=5e4, q_e=4e4)
    base = resonator.photons_from_power(-100.0, 70.0, fit)
    assert resonator.photons_from_power(-90.0, 70.0, fit) == pytest.approx(10 * base, rel=1e-12)
    assert resonator.photons_from_power(-400.0, 70.0, fit) > 0


def test_attenuation_correction(resonator):
    assert resonator.apply_attenuation_correction(70.0) == pytest.approx(69.15)
    assert resonator.apply_attenuation_correction(70.0, 0.0) == 70.0
    cold = resonator.apply_attenuation_correction(63.7, 0.85)
    assert resonator.remove_attenuation_correction(cold, 0.85) == pytest.approx(63.7, abs=1e-12)


def _line(slope_khz, photons, offset=7.1e9):
    return [(n, offset - slope_khz * 1e3 * n) for n in photons]


def test_kerr_exact_line(resonator):
    photons = np.geomspace(0.5, 12.0, 14)
    fit = resonator.fit_kerr(_line(15.4, photons))
    assert fit.k_self == pytest.approx(15.4, rel=1e-6)
    assert fit.f_intercept == pytest.approx(7.1e9, rel=1e-12)
    anchor = resonator.anchor_index(photons)
    assert fit.n_points == min(anchor + 11, 14) - max(anchor - 1, 0)


def test_kerr_zero_slope(resonator):
    fit = resonator.fit_kerr(_line(0.0, np.linspace(0.5, 10, 12)))
    assert fit.k_self == pytest.approx(0.0, abs=1e-9)


def test_kerr_slope_ignores_frequency_offset(resonator):
    photons = np.linspace(0.6, 9, 12)
    noise = np.random.default_rng(3).normal(0, 1e3, photons.size)
    points = [(n, f + e) for (n, f), e in zip(_line(12.0, photons), noise)]
    shifted = [(n, f + 3.3e6) for n, f in points]
    assert resonator.fit_kerr(shifted).k_self == pytest.approx(
        resonator.fit_kerr(points).k_self, rel=1e-6,
    )


def test_kerr_slopes_with_noise(resonator, rng):
    photons = np.linspace(0.8, 10.0, 12)
    recovered = []
    for _, _, slope in KERR_SLOPES_KHZ[1:]:
        within, estimates = 0, []
        for _ in range(50):
            noise = rng.normal(0.0, 1e3, photons.size)
            points = [(n, f + e) for (n, f), e in zip(_line(slope, photons), noise)]
            fit = resonator.fit_kerr(points, anchor=1)
            assert fit.k_self_stderr > 0
            within += abs(fit.k_self - slope) <= 2 * fit.k_self_stderr
            estimates.append(fit.k_self)
        assert within >= 40
        recovered.append(np.mean(estimates))
    assert np.all(np.diff(recovered) > 0)


def test_kerr_needs_three_points(resonator):
    with pytest.raises(InsufficientDataError):
        resonator.fit_kerr(_line(10.0, [0.9, 1.5]))


def test_anchor_index_and_quality_stats(resonator):
    assert resonator.anchor_index([0.5, 0.9, 1.3, 2.0]) == 1
    fits = [HangerFit(f0=5e9, q_i=q, q_e=1e5 + q) for q in (1e4, 2e4, 3e4, 4e4)]
    stats = resonator.anchor_quality_stats(fits, 1)
    assert stats["q_i_mean"] == pytest.approx(2e4)
    assert stats["q_i_std"] == pytest.approx(1e4)
    assert stats["q_e_mean"] == pytest.approx(1.2e5)


def test_kerr_pipeline_recovers_slope(resonator, rng):
    base = HangerFit(f0=6.2e9, q_i=5e4, q_e=4e4)
    within = 0
    for draw in range(20):
        traces = synthetic.kerr_sweep(base, 17.5, attenuation_db=70.0, rng=rng, name="R3")
        row, per_trace = resonator.kerr_pipeline(traces, name="R3")
        assert len(per_trace) == 12
        assert row.anchor_photons == pytest.approx(1.0, rel=0.15)
        assert row.q_i_mean == pytest.approx(5e4, rel=0.01)
        within += abs(row.k_self_khz - 17.5) <= 2 * row.k_self_stderr_khz
    assert within >= 15


def test_kerr_pipeline_exact_without_noise(resonator):
    base = HangerFit(f0=6.2e9, q_i=5e4, q_e=4e4)
    traces = synthetic.kerr_sweep(base, 17.5, attenuation_db=70.0, jitter_hz=0.0, snr_db=None)
    row, _ = resonator.kerr_pipeline(traces)
    assert row.k_self_khz == pytest.approx(17.5, rel=1e-3)


def test_kerr_pipeline_room_attenuation(resonator):
    base = HangerFit(f0=6.2e9, q_i=5e4, q_e=4e4)
    traces = synthetic.kerr_sweep(
        base, 9.0, attenuation_db=69.15, jitter_hz=0.0, snr_db=None,
    )
    row, _ = resonator.kerr_pipeline(traces, room_attenuation_db=70.0)
    assert row.k_self_khz == pytest.approx(9.0, rel=1e-3)
