# -*- encoding: utf-8 -*-
import numpy as np
import pytest

from suspended_circuits.config import Settings
from suspended_circuits.dto.core import ArrayCircuitSpec
from suspended_circuits.handler.modes_handler import (
    ModesHandler,
    analytic_dispersion,
    relative_change,
)
from suspended_circuits.schema.exceptions import (
    BracketError,
    ConvergenceError,
    DegenerateCircuitError,
)
from suspended_circuits.utils.presets import (
    ARRAY_JUNCTIONS,
    GROUND_CAPACITANCE_AF,
    ArrayVariant,
    array_spec,
    table_c0_entries,
)

ALL_SPECS = [(variant, n) for variant in ArrayVariant for n in ARRAY_JUNCTIONS]


def test_single_lc_mode(modes):
    spectrum = modes.solve_modes(np.array([[1e-12]]), np.array([[1e9]]))
    assert spectrum.n_zero_modes == 0
    assert spectrum.frequencies_ghz[0] == pytest.approx(5.0329, rel=1e-4)


@pytest.mark.parametrize(("variant", "n"), ALL_SPECS)
def test_paddle_circuit_has_one_zero_mode(modes, variant, n):
    spectrum = modes.solve_spec(array_spec(variant, n, c_0_af=50.0))
    assert spectrum.n_zero_modes == 1
    assert spectrum.frequencies.size == n
    assert np.all(np.diff(spectrum.frequencies) >= 0)


def test_modes_are_c_orthonormal(modes, circuit):
    spec = array_spec(ArrayVariant.ETCHED, 100, c_0_af=83.0)
    c = circuit.build_capacitance_matrix(spec)
    spectrum = modes.solve_spec(spec)
    v = spectrum.mode_vectors
    np.testing.assert_allclose(v.T @ c @ v, np.eye(v.shape[1]), atol=1e-9)


def test_grounded_chain_has_no_zero_mode(modes):
    spectrum = modes.solve_grounded(array_spec(ArrayVariant.ETCHED, 100, c_0_af=83.0))
    assert spectrum.n_zero_modes == 0


@pytest.mark.parametrize("n", [2, 10, 100, 500])
def test_grounded_modes_match_closed_form(modes, n):
    spec = ArrayCircuitSpec(n_junctions=n, l_j=1.10e-9, c_j=20e-15, c_0=83e-18)
    numeric = modes.solve_grounded(spec).frequencies
    analytic = modes.analytic_spectrum(spec)
    assert numeric.size == analytic.size == n - 1
    np.testing.assert_allclose(numeric, analytic, rtol=1e-9)


def test_closed_form_end_points():
    spec = ArrayCircuitSpec(n_junctions=100, l_j=1.10e-9, c_j=20e-15, c_0=83e-18)
    omega_0 = 1 / np.sqrt(spec.l_j * spec.c_j)
    assert analytic_dispersion(0, spec) == 0.0
    assert analytic_dispersion(100, spec.with_c0(0.0)) == pytest.approx(omega_0, rel=1e-15)
    x = 1 - np.cos(np.pi / 100)
    expected = omega_0 * np.sqrt(x / (x + 83e-18 / 40e-15))
    assert analytic_dispersion(1, spec) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        analytic_dispersion(101, spec)


def test_two_zero_modes_are_degenerate(modes):
    with pytest.raises(DegenerateCircuitError, match="degenerate circuit"):
        modes.solve_modes(np.eye(3) * 1e-15, np.zeros((3, 3)))


@pytest.mark.parametrize(("variant", "n"), ALL_SPECS)
def test_fundamental_decreases_with_ground_capacitance(modes, variant, n):
    spec = array_spec(variant, n)
    c0_values = np.logspace(-18, -12, 20)
    f1 = [modes.forward_fundamental(spec.with_c0(c0)) for c0 in c0_values]
    assert np.all(np.diff(f1) < 0)


def test_substrate_fundamental_below_etched(modes):
    etched = modes.forward_fundamental(array_spec(ArrayVariant.ETCHED, 300, 14.0))
    substrate = modes.forward_fundamental(array_spec(ArrayVariant.SUBSTRATE, 300, 118.0))
    assert 1e9 < substrate < etched < 20e9


@pytest.mark.parametrize(("variant", "n", "c0_af"), table_c0_entries())
def test_ground_capacitance_round_trip(modes, variant, n, c0_af):
    spec = array_spec(variant, n, c0_af)
    f1 = modes.forward_fundamental(spec)
    result = modes.fit_c0(f1, spec.with_c0(0.0))
    assert result.c_0 * 1e18 == pytest.approx(c0_af, rel=1e-3)
    assert result.residual_hz < 1e3
    low, high = result.bracket
    assert low <= result.c_0 <= high


def test_relative_change_after_etching():
    before = GROUND_CAPACITANCE_AF[ArrayVariant.SUBSTRATE][300]
    after = GROUND_CAPACITANCE_AF[ArrayVariant.ETCHED][300]
    assert relative_change(before, after) == pytest.approx((14 - 118) / 118)
    assert round(relative_change(before, after), 2) == -0.88


def test_fit_c0_rejects_bracket_that_misses(modes):
    spec = array_spec(ArrayVariant.SUBSTRATE, 300, 118.0)
    f1 = modes.forward_fundamental(spec)
    with pytest.raises(BracketError, match="wider bracket"):
        modes.fit_c0(f1, spec.with_c0(0.0), bracket=(1e-18, 2e-18))


def test_fit_c0_iteration_cap(logger):
    capped = ModesHandler(Settings(c0_max_iterations=3, c0_tol_hz=1e-6), logger)
    spec = array_spec(ArrayVariant.ETCHED, 200, 60.0)
    f1 = capped.forward_fundamental(spec)
    with pytest.raises(ConvergenceError, match="no convergence"):
        capped.fit_c0(f1, spec.with_c0(0.0))
