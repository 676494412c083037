# -*- encoding: utf-8 -*-
"""Reproduction of the published device numbers from the analysis chain.

Every chain compares computed values with their targets and reports
pass/fail; a chain that raises is reported as failed under its own name.
"""
from __future__ import annotations

import time
from typing import TYPE_CHECKING, Callable, List, Optional

import numpy as np
from pydantic import BaseModel

from suspended_circuits.dto.core import ArrayCircuitSpec
from suspended_circuits.dto.fluxonium import DephasingInputs
from suspended_circuits.dto.resonator import HangerFit
from suspended_circuits.handler.handler_factory import HandlerType
from suspended_circuits.handler.modes_handler import analytic_dispersion, relative_change
from suspended_circuits.schema.exceptions import CircuitsError
from suspended_circuits.utils import presets, synthetic

if TYPE_CHECKING:
    import logging

    from suspended_circuits.handler.handler_factory import HandlerFactory


class CheckResult(BaseModel):
    chain: str
    quantity: str
    computed: str
    target: str
    passed: bool


class ChainReport(BaseModel):
    chain: str
    checks: List[CheckResult] = []
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and all(check.passed for check in self.checks)


class Reproduction:
    """Runs the reproduction chains with the handlers of one factory."""

    def __init__(self, handler_factory: HandlerFactory, logger: logging.Logger):
        self.factory = handler_factory
        self.settings = handler_factory.settings
        self.logger = logger
        self.chains: List[tuple] = [
            ("Dispersive shift", self.dispersive_shift),
            ("Thermal dephasing", self.thermal_dephasing),
            ("Grounded-chain dispersion", self.grounded_dispersion),
            ("C0 round trips", self.c0_round_trips),
            ("Ambegaokar-Baratoff chain", self.ambegaokar_baratoff),
            ("Probe-fit recovery", self.probe_recovery),
            ("Fluxonium phase-grid agreement", self.fluxonium_oracle),
            ("Kerr pipeline", self.kerr_pipeline),
            ("Quality factors", self.quality_factors),
            ("S21 fitter", self.s21_fitter),
        ]

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self.settings.seed)

    def run(self, only: Optional[List[str]] = None) -> List[ChainReport]:
        reports = []
        for name, chain in self.chains:
            if only and name not in only:
                continue
            reports.append(self._run_chain(name, chain))
        return reports

    def _run_chain(self, name: str, chain: Callable[[str], List[CheckResult]]) -> ChainReport:
        start = time.perf_counter()
        try:
            checks = chain(name)
            error = None
        except (CircuitsError, ValueError) as e:
            checks, error = [], f"{type(e).__name__}: {e}"
            self.logger.error(f"reproduction chain {name!r} failed: {error}")
        report = ChainReport(
            chain=name, checks=checks, error=error, seconds=time.perf_counter() - start,
        )
        self.logger.info(f"{name}: {'PASS' if report.passed else 'FAIL'} ({report.seconds:.2f} s)")
        return report

    def dispersive_shift(self, chain: str) -> List[CheckResult]:
        readout = presets.DEVICE_C_READOUT
        fluxonium = self.factory.create(HandlerType.FLUXONIUM)
        device = presets.FLUXONIUM_DEVICES["C"]
        g = 2 * np.pi * readout["g_ghz"] * 1e9
        omega_r = 2 * np.pi * readout["f_r_ghz"] * 1e9
        phi_ext = fluxonium.operating_point(device, g, omega_r)
        shift = fluxonium.dispersive_shift(device.at_flux(phi_ext), g=g, omega_r=omega_r)
        chi_mhz = abs(shift.chi_01) / (2 * np.pi * 1e6)
        target = readout["chi_target_mhz"]
        return [
            CheckResult(
                chain=chain, quantity="operating point phi_ext/pi",
                computed=f"{phi_ext / np.pi:.4f}", target="[0.9, 0.92]",
                passed=0.9 <= phi_ext / np.pi <= 0.92,
            ),
            CheckResult(
                chain=chain, quantity="|chi_01|/2pi (MHz)", computed=f"{chi_mhz:.3f}",
                target=f"{target} +- 15%", passed=abs(chi_mhz - target) <= 0.15 * target,
            ),
        ]

    def thermal_dephasing(self, chain: str) -> List[CheckResult]:
        readout = presets.DEVICE_C_READOUT
        result = self.factory.create(HandlerType.FLUXONIUM).thermal_dephasing(
            DephasingInputs(
                kappa_r=2 * np.pi * readout["kappa_mhz"] * 1e6,
                chi_01=2 * np.pi * readout["chi_target_mhz"] * 1e6,
                n_th=0.01,
            ),
        )
        t_phi_us = result.t_phi * 1e6
        return [CheckResult(
            chain=chain, quantity="T_phi at n_th = 0.01 (us)", computed=f"{t_phi_us:.1f}",
            target="[10, 60]", passed=10 <= t_phi_us <= 60,
        )]

    def grounded_dispersion(self, chain: str) -> List[CheckResult]:
        modes = self.factory.create(HandlerType.MODES)
        checks = []
        for n in (2, 10, 100, 500):
            spec = ArrayCircuitSpec(n_junctions=n, l_j=0.91e-9, c_j=20e-15, c_0=118e-18)
            numeric = modes.solve_grounded(spec).frequencies
            analytic = np.array([analytic_dispersion(k, spec) for k in range(1, n)])
            worst = float(np.max(np.abs(numeric / analytic - 1)))
            checks.append(CheckResult(
                chain=chain, quantity=f"max relative deviation, N = {n}",
                computed=f"{worst:.2e}", target="< 1e-9", passed=worst < 1e-9,
            ))
        return checks

    def _round_trip(self, modes, spec: ArrayCircuitSpec) -> float:
        f1 = modes.forward_fundamental(spec)
        return modes.fit_c0(f1, spec.with_c0(0.0)).c_0

    def c0_round_trips(self, chain: str) -> List[CheckResult]:
        modes = self.factory.create(HandlerType.MODES)
        checks = []
        for variant, n, c0_af in presets.table_c0_entries():
            recovered = self._round_trip(modes, presets.array_spec(variant, n, c0_af)) * 1e18
            checks.append(CheckResult(
                chain=chain, quantity=f"C0 {variant.value} N = {n} (aF)",
                computed=f"{recovered:.3f}", target=f"{c0_af} +- 0.1%",
                passed=abs(recovered / c0_af - 1) < 1e-3,
            ))
        substrate = presets.GROUND_CAPACITANCE_AF[presets.ArrayVariant.SUBSTRATE][300]
        etched = presets.GROUND_CAPACITANCE_AF[presets.ArrayVariant.ETCHED][300]
        change = relative_change(substrate, etched)
        checks.append(CheckResult(
            chain=chain, quantity="relative C0 change, N = 300",
            computed=f"{change:.2f}", target=f"{presets.RELATIVE_C0_CHANGE[300]}",
            passed=round(change, 2) == presets.RELATIVE_C0_CHANGE[300],
        ))
        return checks

    def ambegaokar_baratoff(self, chain: str) -> List[CheckResult]:
        probe = self.factory.create(HandlerType.PROBE)
        checks = []
        for variant, l_j_nh in presets.L_J_NH.items():
            r_n = probe.resistance_for_inductance(l_j_nh * 1e-9)
            recovered = probe.l_j_from_resistance(r_n) * 1e9
            checks.append(CheckResult(
                chain=chain, quantity=f"L_J {variant.value} (nH), R_n = {r_n:.1f} ohm",
                computed=f"{recovered:.4f}", target=f"{l_j_nh} +- 0.5%",
                passed=abs(recovered / l_j_nh - 1) < 5e-3,
            ))
        return checks

    def probe_recovery(self, chain: str) -> List[CheckResult]:
        probe = self.factory.create(HandlerType.PROBE)
        rng = self._rng()
        checks = []
        generators = {
            presets.ArrayVariant.SUBSTRATE: 782.0,
            presets.ArrayVariant.ETCHED: 905.0,
        }
        for variant, r_j in generators.items():
            r_sub = presets.SUBSTRATE_RESISTANCE_OHM[variant]
            dataset = synthetic.probe_dataset(r_j, r_sub, replicates=32, noise=0.02, rng=rng)
            fit = probe.fit_probe(dataset)
            checks.append(CheckResult(
                chain=chain, quantity=f"r_j {variant.value} (ohm)",
                computed=f"{fit.r_junction:.1f}", target=f"{r_j} +- 5%",
                passed=abs(fit.r_junction / r_j - 1) < 0.05,
            ))
            checks.append(CheckResult(
                chain=chain, quantity=f"r_sub {variant.value} (kohm)",
                computed=f"{fit.r_substrate / 1e3:.1f}", target=f"{r_sub / 1e3:g} +- 5%",
                passed=abs(fit.r_substrate / r_sub - 1) < 0.05,
            ))
        return checks

    def fluxonium_oracle(self, chain: str) -> List[CheckResult]:
        fluxonium = self.factory.create(HandlerType.FLUXONIUM)
        checks = []
        for device, params in presets.FLUXONIUM_DEVICES.items():
            params = params.at_flux(np.pi)
            basis = fluxonium.diagonalize(params).energies[:6]
            grid = fluxonium.phase_grid_energies(params)[:6]
            worst_khz = float(np.max(np.abs(basis - grid))) * 1e6
            checks.append(CheckResult(
                chain=chain, quantity=f"device {device}: levels 0-5 vs phase grid (kHz)",
                computed=f"{worst_khz:.3f}", target="< 1", passed=worst_khz < 1.0,
            ))
            delta = 0.37
            sweep = fluxonium.spectrum_sweep(
                params, [np.pi + delta, np.pi - delta, np.pi + delta + 2 * np.pi],
                [(0, 1), (0, 2), (0, 3)],
            )
            keys = ["f_01_ghz", "f_02_ghz", "f_03_ghz"]
            mirror = max(abs(sweep[0][k] - sweep[1][k]) for k in keys) * 1e6
            period = max(abs(sweep[0][k] - sweep[2][k]) for k in keys) * 1e6
            checks.append(CheckResult(
                chain=chain, quantity=f"device {device}: mirror / period asymmetry (kHz)",
                computed=f"{mirror:.2e} / {period:.2e}", target="< 1",
                passed=mirror < 1.0 and period < 1.0,
            ))
        return checks

    def kerr_pipeline(self, chain: str, draws: int = 30) -> List[CheckResult]:
        resonator = self.factory.create(HandlerType.RESONATOR)
        rng = self._rng()
        checks, recovered = [], []
        for index, (name, _, slope) in enumerate(presets.KERR_SLOPES_KHZ):
            base = HangerFit(f0=5.0e9 + 0.4e9 * index, q_i=5e4, q_e=4e4)
            rows = []
            for _ in range(draws):
                traces = synthetic.kerr_sweep(base, slope, attenuation_db=70.0, rng=rng, name=name)
                rows.append(resonator.kerr_pipeline(traces, name=name)[0])
            within = sum(abs(row.k_self_khz - slope) <= 2 * row.k_self_stderr_khz for row in rows)
            mean = float(np.mean([row.k_self_khz for row in rows]))
            recovered.append(mean)
            checks.append(CheckResult(
                chain=chain, quantity=f"{name} K_self (kHz/photon), {draws} noisy sweeps",
                computed=f"{mean:.3f}, within 2 sigma in {within}/{draws}",
                target=f"{slope}, within 2 sigma in >= 75%", passed=within >= 0.75 * draws,
            ))
        checks.append(CheckResult(
            chain=chain, quantity="ordering with decreasing junction count",
            computed=", ".join(f"{k:.2f}" for k in recovered), target="increasing",
            passed=bool(np.all(np.diff(recovered) > 0)),
        ))

        name, _, slope = presets.KERR_SLOPES_KHZ[-1]
        exact = synthetic.kerr_sweep(
            HangerFit(f0=6.6e9, q_i=5e4, q_e=4e4), slope, attenuation_db=70.0,
            jitter_hz=0.0, snr_db=None, name=name,
        )
        k_exact = resonator.kerr_pipeline(exact, name=name)[0].k_self_khz
        checks.append(CheckResult(
            chain=chain, quantity=f"{name} K_self without noise (kHz/photon)",
            computed=f"{k_exact:.4f}", target=f"{slope} +- 0.1%",
            passed=abs(k_exact / slope - 1) < 1e-3,
        ))
        return checks

    def quality_factors(self, chain: str) -> List[CheckResult]:
        fluxonium = self.factory.create(HandlerType.FLUXONIUM)
        checks = []
        for device, (f, t1, quoted) in presets.QUALITY_FACTORS.items():
            q = fluxonium.quality_factor(f, t1)
            checks.append(CheckResult(
                chain=chain, quantity=f"device {device}: Q = 2 pi f T1",
                computed=f"{q:.3g}", target=f"{quoted:.2g} +- 2%",
                passed=abs(q / quoted - 1) < 0.02,
            ))
        return checks

    def s21_fitter(self, chain: str, draws: int = 100) -> List[CheckResult]:
        resonator = self.factory.create(HandlerType.RESONATOR)
        rng = self._rng()
        truth = presets_hanger()
        exact = resonator.fit_s21(synthetic.hanger_trace(truth))
        worst_exact = max(
            abs(exact.q_i / truth.q_i - 1), abs(exact.q_e / truth.q_e - 1),
            abs(exact.f0 / truth.f0 - 1),
        )
        worst_noisy, worst_f0 = 0.0, 0.0
        for _ in range(draws):
            params = synthetic.random_hanger(rng)
            fit = resonator.fit_s21(synthetic.hanger_trace(
                params, n_points=synthetic.SWEEP_POINTS, snr_db=20.0, rng=rng,
            ))
            worst_noisy = max(
                worst_noisy, abs(fit.q_i / params.q_i - 1), abs(fit.q_e / params.q_e - 1),
            )
            worst_f0 = max(worst_f0, abs(fit.f0 - params.f0) / params.linewidth_hz)
        return [
            CheckResult(
                chain=chain, quantity="noise-free round trip, worst relative error",
                computed=f"{worst_exact:.1e}", target="< 1e-6", passed=worst_exact < 1e-6,
            ),
            CheckResult(
                chain=chain, quantity=f"20 dB SNR, {draws} draws, worst Qi/Qe error",
                computed=f"{100 * worst_noisy:.2f}%", target="< 5%", passed=worst_noisy < 0.05,
            ),
            CheckResult(
                chain=chain, quantity=f"20 dB SNR, {draws} draws, worst f0 error (linewidths)",
                computed=f"{worst_f0:.4f}", target="< 0.01", passed=worst_f0 < 0.01,
            ),
        ]


def presets_hanger() -> HangerFit:
    """A resonator close to the measured suspended arrays."""
    return HangerFit(
        f0=5.0e9, q_i=3.6e4, q_e=1e5, phi_asym=0.1, amplitude=0.8,
        phase_offset=0.5, delay=20e-9,
    )


def render_report(reports: List[ChainReport]) -> str:
    """Markdown report with one table per chain."""
    passed = sum(report.passed for report in reports)
    lines = [
        "# Reproduction report",
        "",
        f"{passed} of {len(reports)} chains passed.",
        "",
    ]
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        lines += [f"## {report.chain}: {status} ({report.seconds:.2f} s)", ""]
        if report.error:
            lines += [f"Failed with {report.error}", ""]
            continue
        lines += ["| quantity | computed | target | result |", "|---|---|---|---|"]
        lines += [
            f"| {c.quantity} | {c.computed} | {c.target} | {'pass' if c.passed else 'FAIL'} |"
            for c in report.checks
        ]
        lines.append("")
    return "\n".join(lines)
