# -*- encoding: utf-8 -*-
import json

import numpy as np
import pandas as pd
import pytest

from suspended_circuits.dto.resonator import HangerFit
from suspended_circuits.schema.exceptions import InputError
from suspended_circuits.upload.reader_factory import ReaderFactory, ReaderType
from suspended_circuits.utils import synthetic


def _reader(reader_type):
    return ReaderFactory().create(reader_type)


def _write_trace(path, trace, polar=False):
    if polar:
        frame = pd.DataFrame({
            "freq_hz": trace.freqs,
            "s21_db": 20 * np.log10(np.abs(trace.s21)),
            "s21_phase_rad": np.angle(trace.s21),
        })
    else:
        frame = pd.DataFrame({
            "freq_hz": trace.freqs, "s21_re": trace.s21.real, "s21_im": trace.s21.imag,
        })
    frame.to_csv(path, index=False, float_format="%.17g")


@pytest.fixture()
def trace():
    return synthetic.hanger_trace(HangerFit(f0=6e9, q_i=5e4, q_e=4e4), n_points=101)


def test_spec_json(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"n_junctions": 100, "l_j": 1.1, "c_j": 20, "c_0": 0.083}))
    spec = _reader(ReaderType.SPEC).read(str(path))
    assert spec.n_junctions == 100
    assert spec.l_j == pytest.approx(1.1e-9)
    assert spec.c_0 == pytest.approx(83e-18)


@pytest.mark.parametrize(
    "content",
    ["", "[1, 2]", json.dumps({"n_junctions": 0, "l_j": 1, "c_j": 20}),
     json.dumps({"n_junctions": 10, "l_j": 1, "c_j": 20, "c_x": 1})],
)
def test_spec_rejected(tmp_path, content):
    path = tmp_path / "spec.json"
    path.write_text(content)
    with pytest.raises(InputError):
        _reader(ReaderType.SPEC).read(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="no such file"):
        _reader(ReaderType.TRACE).read(str(tmp_path / "absent.csv"))


@pytest.mark.parametrize("polar", [False, True])
def test_trace_formats(tmp_path, trace, polar):
    path = tmp_path / "r1.csv"
    _write_trace(path, trace, polar=polar)
    read = _reader(ReaderType.TRACE).read(str(path))
    assert read.name == "r1"
    np.testing.assert_allclose(read.s21, trace.s21, rtol=1e-9, atol=1e-12)


def test_trace_needs_complex_columns(tmp_path):
    path = tmp_path / "bad.csv"
    pd.DataFrame({"freq_hz": [1.0, 2.0], "s21_mag": [1.0, 1.0]}).to_csv(path, index=False)
    with pytest.raises(InputError, match="s21_re"):
        _reader(ReaderType.TRACE).read(str(path))


def test_sweep_power_from_file_name_and_sidecar(tmp_path, trace):
    _write_trace(tmp_path / "R1_p-30.csv", trace)
    _write_trace(tmp_path / "R1_second.csv", trace)
    (tmp_path / "R1_second.json").write_text(json.dumps({"power_dbm": -25, "attenuation_db": 69.15}))
    traces = _reader(ReaderType.SWEEP).read(str(tmp_path))
    powers = {t.name: (t.power_dbm, t.attenuation_db) for t in traces}
    assert powers == {"R1_p-30": (-30.0, 0.0), "R1_second": (-25.0, 69.15)}


def test_sweep_missing_power(tmp_path, trace):
    _write_trace(tmp_path / "R1.csv", trace)
    with pytest.raises(InputError, match="missing power metadata"):
        _reader(ReaderType.SWEEP).read(str(tmp_path))


def test_spectroscopy(tmp_path):
    path = tmp_path / "points.csv"
    path.write_text("phi_ext_over_2pi,transition,freq_ghz\n0.5,01,0.46\n0.0,02,5.1\n")
    points = _reader(ReaderType.SPECTROSCOPY).read(str(path))
    assert points[0].transition == (0, 1)
    assert points[0].phi_ext == pytest.approx(np.pi)
    assert points[1].freq_ghz == 5.1


def test_spectroscopy_bad_label(tmp_path):
    path = tmp_path / "points.csv"
    path.write_text("phi_ext_over_2pi,transition,freq_ghz\n0.5,0-1,0.46\n")
    with pytest.raises(InputError, match="transition"):
        _reader(ReaderType.SPECTROSCOPY).read(str(path))


def test_probe_csv(tmp_path):
    path = tmp_path / "probe.csv"
    path.write_text("n_junctions,resistance_ohm\n100,7.0e4\n100,7.2e4\n300,1.8e5\n")
    dataset = _reader(ReaderType.PROBE).read(str(path))
    assert dataset.distinct_counts == 2
    assert dataset.records[0].resistances == (7.0e4, 7.2e4)


def test_empty_csv(tmp_path):
    path = tmp_path / "probe.csv"
    path.write_text("")
    with pytest.raises(InputError, match="could not parse"):
        _reader(ReaderType.PROBE).read(str(path))
