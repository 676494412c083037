# -*- encoding: utf-8 -*-
"""Commands for normal modes and ground-capacitance extraction."""
from __future__ import annotations

import json
import os

import numpy as np

from suspended_circuits.dto.modes import ModeRecord
from suspended_circuits.handler.handler_factory import HandlerType
from suspended_circuits.handler.modes_handler import relative_change
from suspended_circuits.schema.exceptions import InputError
from suspended_circuits.upload.reader_factory import ReaderType
from suspended_circuits.utils.router import CommandRouter, arg

router = CommandRouter()


@router.command(
    "modes",
    help="normal-mode frequencies of an array",
    arguments=[
        arg("spec", help="circuit JSON (fF, nH)"),
        arg("--grounded", action="store_true",
            help="ground both ends and compare with the closed-form dispersion"),
    ],
)
def cmd_modes(args, ctx) -> int:
    spec = ctx.read(ReaderType.SPEC, args.spec)
    modes = ctx.handler_factory.create(HandlerType.MODES)
    if args.grounded:
        analytic = modes.analytic_spectrum(spec)
        numeric = modes.solve_grounded(spec).frequencies
        record = ModeRecord(
            n_junctions=spec.n_junctions,
            frequencies_ghz=(analytic / (2 * np.pi * 1e9)).tolist(),
            grounded=True,
            max_relative_deviation=float(np.max(np.abs(numeric / analytic - 1))),
        )
        rows = [
            {"mode": k, "frequency_ghz": a / (2 * np.pi * 1e9), "numeric_ghz": n / (2 * np.pi * 1e9)}
            for k, (a, n) in enumerate(zip(analytic, numeric), start=1)
        ]
    else:
        spectrum = modes.solve_spec(spec)
        record = ModeRecord(
            n_junctions=spec.n_junctions,
            frequencies_ghz=spectrum.frequencies_ghz.tolist(),
            n_zero_modes=spectrum.n_zero_modes,
        )
        rows = [
            {"mode": k, "frequency_ghz": f}
            for k, f in enumerate(spectrum.frequencies_ghz, start=1)
        ]
    ctx.emit(record, "modes.json", rows, "modes.csv")
    return 0


def _c0_value(token: str) -> float:
    """A C0 in aF, given as a number or as a fit-c0 JSON result."""
    if os.path.isfile(token):
        with open(token) as f:
            try:
                return float(json.load(f)["c0_af"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise InputError(f"{token}: not a fit-c0 result") from e
    try:
        return float(token)
    except ValueError as e:
        raise InputError(f"--compare expects numbers in aF or result files, got {token!r}") from e


@router.command(
    "fit-c0",
    help="ground capacitance from a measured fundamental frequency",
    arguments=[
        arg("spec", nargs="?", help="circuit JSON; its c_0 is ignored"),
        arg("--f1-ghz", type=float, help="measured fundamental frequency"),
        arg("--bracket-af", type=float, nargs=2, metavar=("LOW", "HIGH")),
        arg("--tol-hz", type=float),
        arg("--compare", nargs=2, metavar=("BEFORE", "AFTER"),
            help="relative change between two C0 values (aF or fit-c0 JSON files)"),
    ],
)
def cmd_fit_c0(args, ctx) -> int:
    result = {}
    if args.spec is not None:
        if args.f1_ghz is None:
            raise InputError("fit-c0 needs --f1-ghz together with a spec")
        spec = ctx.read(ReaderType.SPEC, args.spec)
        modes = ctx.handler_factory.create(HandlerType.MODES)
        bracket = tuple(b * 1e-18 for b in args.bracket_af) if args.bracket_af else None
        fit = modes.fit_c0(args.f1_ghz * 1e9, spec.with_c0(0.0), bracket, args.tol_hz)
        result.update(fit.record())
    elif args.compare is None:
        raise InputError("fit-c0 needs a spec file or --compare")
    if args.compare is not None:
        before, after = (_c0_value(token) for token in args.compare)
        result["relative_change"] = relative_change(before, after)
        result["compare_af"] = [before, after]
    ctx.emit(result, "fit_c0.json")
    return 0
