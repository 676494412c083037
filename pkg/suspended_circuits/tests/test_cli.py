# -*- encoding: utf-8 -*-
import json

import numpy as np
import pandas as pd
import pytest

from suspended_circuits.dto.resonator import HangerFit
from suspended_circuits.main import main
from suspended_circuits.utils import synthetic
from suspended_circuits.utils.presets import (
    FLUXONIUM_DEVICES,
    SUBSTRATE_RESISTANCE_OHM,
    ArrayVariant,
    array_spec,
)
from suspended_circuits.utils.synthetic import spectroscopy_points


def _run(tmp_path, *arguments):
    return main(["--out", str(tmp_path), *arguments])


def _error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


@pytest.fixture()
def etched_spec(tmp_path):
    path = tmp_path / "r3.json"
    path.write_text(json.dumps(array_spec(ArrayVariant.ETCHED, 100, 83.0).serialize()))
    return str(path)


def test_version(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.strip()


def test_unknown_command_is_usage_error():
    assert main(["resonate"]) == 2


def test_modes(tmp_path, etched_spec, capsys):
    assert _run(tmp_path, "modes", etched_spec) == 0
    record = json.loads(capsys.readouterr().out)
    assert len(record["frequencies_ghz"]) == 100
    assert record["n_zero_modes"] == 1
    assert (tmp_path / "modes.json").exists()
    assert len(pd.read_csv(tmp_path / "modes.csv")) == 100


def test_modes_grounded(tmp_path, etched_spec, capsys):
    assert _run(tmp_path, "modes", etched_spec, "--grounded") == 0
    record = json.loads(capsys.readouterr().out)
    assert record["grounded"] is True
    assert record["max_relative_deviation"] < 1e-9


def test_empty_spec_is_input_error(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text("")
    assert _run(tmp_path, "modes", str(path)) == 2
    assert _error(capsys)["exit_code"] == 2


def test_fit_c0_compare(tmp_path, capsys):
    assert _run(tmp_path, "fit-c0", "--compare", "118", "14") == 0
    result = json.loads(capsys.readouterr().out)
    assert round(result["relative_change"], 2) == -0.88


def test_fit_c0_round_trip_and_compare_files(tmp_path, etched_spec, modes, capsys):
    f1 = modes.forward_fundamental(array_spec(ArrayVariant.ETCHED, 100, 83.0))
    assert _run(tmp_path, "fit-c0", etched_spec, "--f1-ghz", str(float(f1) / 1e9)) == 0
    fitted = json.loads(capsys.readouterr().out)
    assert fitted["c0_af"] == pytest.approx(83.0, rel=0.01)
    before = tmp_path / "before.json"
    before.write_text(json.dumps({"c0_af": 2 * fitted["c0_af"]}))
    after = tmp_path / "fit_c0.json"
    assert _run(tmp_path, "fit-c0", "--compare", str(before), str(after)) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["relative_change"] == pytest.approx(-0.5)


def test_fit_c0_outside_bracket(tmp_path, etched_spec, capsys):
    code = _run(tmp_path, "fit-c0", etched_spec, "--f1-ghz", "50", "--bracket-af", "1", "10")
    assert code == 3
    assert "wider bracket" in _error(capsys)["error"]


def test_chi_device_c(tmp_path, capsys):
    assert _run(tmp_path, "fluxonium", "chi", "--device", "C") == 0
    record = json.loads(capsys.readouterr().out)
    assert record["abs_chi_01_mhz"] == pytest.approx(1.38, rel=0.15)
    assert 0.9 < record["phi_ext_over_pi"] < 0.92
    assert record["dispersive_ratio"] == pytest.approx(0.1, abs=1e-4)


def test_chi_at_explicit_flux(tmp_path, capsys):
    code = _run(tmp_path, "fluxonium", "chi", "--device", "C", "--flux", "0.5", "--g-ghz", "0.01")
    assert code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["phi_ext_over_pi"] == 1.0
    assert record["dispersive_ratio"] < 0.1


def test_chi_refused_when_not_dispersive(tmp_path, capsys):
    code = _run(tmp_path, "fluxonium", "chi", "--device", "C", "--flux", "0.5", "--g-ghz", "0.2")
    assert code == 3
    assert "not dispersive" in _error(capsys)["error"]


def test_dephasing_without_photons(tmp_path, capsys):
    assert _run(tmp_path, "fluxonium", "dephasing", "--n-th", "0", "0.01") == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["t_phi_us"] == "inf"
    assert rows[1]["t_phi_us"] == pytest.approx(26.6, rel=0.02)


def test_spectrum_table(tmp_path, capsys):
    code = _run(
        tmp_path, "fluxonium", "spectrum", "--device", "B", "--points", "5",
        "--transitions", "01", "12",
    )
    assert code == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [row["phi_ext_over_2pi"] for row in rows] == pytest.approx([0, 0.25, 0.5, 0.75, 1])
    assert {"f_01_ghz", "f_12_ghz"} <= set(rows[0])


def test_photons(tmp_path, capsys):
    base = ["resonator", "photons", "--f0-ghz", "6", "--q-i", "5e4", "--q-e", "4e4"]
    assert _run(tmp_path, *base, "--power-dbm", "-20", "--room-attenuation-db", "70") == 0
    record = json.loads(capsys.readouterr().out)
    assert record["attenuation_db"] == pytest.approx(69.15)
    assert _run(tmp_path, *base, "--power-dbm", "-20") == 2


def test_kerr_missing_power(tmp_path, capsys):
    sweep = tmp_path / "sweep"
    sweep.mkdir()
    freqs = np.linspace(6e9, 6.001e9, 11)
    pd.DataFrame({"freq_hz": freqs, "s21_re": 1.0, "s21_im": 0.0}).to_csv(
        sweep / "trace.csv", index=False,
    )
    assert _run(tmp_path, "resonator", "kerr", str(sweep)) == 2
    assert "missing power metadata" in _error(capsys)["error"]


def test_probe_fit(tmp_path, capsys):
    path = tmp_path / "probe.csv"
    n = np.repeat([100, 200, 300, 400, 500], 2)
    r = 782.0 * n * 670e3 / (782.0 * n + 670e3)
    pd.DataFrame({"n_junctions": n, "resistance_ohm": r}).to_csv(path, index=False)
    assert _run(tmp_path, "probe-fit", str(path)) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["r_junction_ohm"] == pytest.approx(782.0, rel=1e-3)
    assert result["l_j_nh"] == pytest.approx(0.91, rel=5e-3)


def test_probe_fit_single_count(tmp_path, capsys):
    path = tmp_path / "probe.csv"
    path.write_text("n_junctions,resistance_ohm\n300,2.1e5\n300,2.2e5\n")
    assert _run(tmp_path, "probe-fit", str(path)) == 3
    assert "singular fit" in _error(capsys)["error"]


def test_reproduce_reports_broken_gap(tmp_path, capsys):
    config_path = tmp_path / "broken.env"
    config_path.write_text("gap_uev=0\n")
    code = main([
        "--config", str(config_path), "--out", str(tmp_path),
        "reproduce", "--only", "Ambegaokar-Baratoff chain", "Quality factors",
    ])
    assert code == 3
    report = capsys.readouterr().out
    assert "## Ambegaokar-Baratoff chain: FAIL" in report
    assert "## Quality factors: PASS" in report
    saved = json.loads((tmp_path / "reproduce_report.json").read_text())
    assert [entry["passed"] for entry in saved] == [False, True]


def _write_trace(path, trace):
    pd.DataFrame({
        "freq_hz": trace.freqs, "s21_re": trace.s21.real, "s21_im": trace.s21.imag,
    }).to_csv(path, index=False, float_format="%.17g")


def test_fit_s21_round_trip(tmp_path, capsys):
    truth = HangerFit(
        f0=6.2e9, q_i=3.6e4, q_e=1e5, phi_asym=0.1, amplitude=0.8, phase_offset=0.5,
        delay=20e-9,
    )
    _write_trace(tmp_path / "r3.csv", synthetic.hanger_trace(truth))
    assert _run(tmp_path, "resonator", "fit-s21", str(tmp_path / "r3.csv")) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["f0_ghz"] == pytest.approx(6.2, rel=1e-8)
    assert record["q_i"] == pytest.approx(3.6e4, rel=1e-6)
    assert record["q_e"] == pytest.approx(1e5, rel=1e-6)
    assert json.loads((tmp_path / "r3_fit.json").read_text())["delay_ns"] == pytest.approx(20.0)


def test_kerr_sweep_directory(tmp_path, capsys):
    sweep = tmp_path / "R3"
    sweep.mkdir()
    base = HangerFit(f0=6.2e9, q_i=5e4, q_e=4e4)
    traces = synthetic.kerr_sweep(
        base, 17.5, attenuation_db=69.15, jitter_hz=0.0, snr_db=None, name="R3",
    )
    for trace in traces:
        _write_trace(sweep / f"{trace.name}.csv", trace)
    code = _run(tmp_path, "resonator", "kerr", str(sweep), "--room-attenuation-db", "70")
    assert code == 0
    row = json.loads(capsys.readouterr().out)
    assert row["name"] == "R3"
    assert row["k_self_khz"] == pytest.approx(17.5, rel=1e-3)
    assert row["anchor_photons"] == pytest.approx(1.0, rel=0.15)
    assert len(pd.read_csv(tmp_path / "R3_kerr_traces.csv")) == 12


def test_fluxonium_fit_points(tmp_path, fluxonium, capsys):
    truth = FLUXONIUM_DEVICES["C"]
    points = spectroscopy_points(fluxonium, truth, [0.0, 0.15, 0.3, 0.5])
    path = tmp_path / "points.csv"
    pd.DataFrame({
        "phi_ext_over_2pi": [p.phi_ext / (2 * np.pi) for p in points],
        "transition": [f"{p.transition[0]}{p.transition[1]}" for p in points],
        "freq_ghz": [p.freq_ghz for p in points],
    }).to_csv(path, index=False, float_format="%.17g")
    code = _run(tmp_path, "fluxonium", "fit", str(path), "--guess", "2.8", "0.95", "0.45")
    assert code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["success"] is True
    for name in ("e_j", "e_c", "e_l"):
        assert record[name] == pytest.approx(getattr(truth, name), rel=1e-4)
    assert len(pd.read_csv(tmp_path / "fluxonium_fit_residuals.csv")) == len(points)


def test_probe_fit_etched(tmp_path, capsys):
    r_sub = SUBSTRATE_RESISTANCE_OHM[ArrayVariant.ETCHED]
    dataset = synthetic.probe_dataset(905.0, r_sub, replicates=2)
    path = tmp_path / "etched.csv"
    rows = [(record.n_junctions, r) for record in dataset.records for r in record.resistances]
    pd.DataFrame(rows, columns=["n_junctions", "resistance_ohm"]).to_csv(
        path, index=False, float_format="%.17g",
    )
    assert _run(tmp_path, "probe-fit", str(path)) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["r_substrate_kohm"] == pytest.approx(1000.0, rel=1e-3)
    assert result["r_junction_ohm"] == pytest.approx(905.0, rel=1e-3)
