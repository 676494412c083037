# -*- encoding: utf-8 -*-
"""Resonator trace fitting, photon-number and self-Kerr commands."""
from __future__ import annotations

import os

from suspended_circuits.dto.resonator import HangerFit
from suspended_circuits.handler.handler_factory import HandlerType
from suspended_circuits.schema.exceptions import InputError
from suspended_circuits.upload.reader_factory import ReaderType
from suspended_circuits.utils.router import CommandRouter, arg

router = CommandRouter("resonator", help="hanger resonator analysis")


@router.command(
    "fit-s21",
    help="fit one S21 trace",
    arguments=[arg("trace", help="CSV with freq_hz and s21_re/s21_im or s21_db/s21_phase_rad")],
)
def cmd_fit_s21(args, ctx) -> int:
    trace = ctx.read(ReaderType.TRACE, args.trace)
    fit = ctx.handler_factory.create(HandlerType.RESONATOR).fit_s21(trace)
    ctx.emit(fit.record(), f"{trace.name}_fit.json")
    return 0


@router.command(
    "kerr",
    help="self-Kerr slope from a directory of per-power traces",
    arguments=[
        arg("sweep", help="directory of <name>_p<dBm>.csv traces or traces with JSON sidecars"),
        arg("--room-attenuation-db", type=float,
            help="room-temperature line attenuation; sidecar values are used when omitted"),
        arg("--name", help="row label (directory name by default)"),
    ],
)
def cmd_kerr(args, ctx) -> int:
    traces = ctx.read(ReaderType.SWEEP, args.sweep)
    name = args.name or os.path.basename(os.path.normpath(args.sweep))
    resonator = ctx.handler_factory.create(HandlerType.RESONATOR)
    row, per_trace = resonator.kerr_pipeline(traces, args.room_attenuation_db, name=name)
    for record in per_trace:
        record.update({f"{k}_stderr": v for k, v in record.pop("stderr").items()})
    ctx.emit(row, f"{name}_kerr.json", per_trace, f"{name}_kerr_traces.csv")
    return 0


@router.command(
    "photons",
    help="on-resonance photon number for a drive power",
    arguments=[
        arg("--power-dbm", type=float, required=True, help="instrument output power"),
        arg("--attenuation-db", type=float, help="cold line attenuation"),
        arg("--room-attenuation-db", type=float,
            help="room-temperature attenuation; the configured correction is applied"),
        arg("--f0-ghz", type=float, required=True),
        arg("--q-i", type=float, required=True),
        arg("--q-e", type=float, required=True),
    ],
)
def cmd_photons(args, ctx) -> int:
    resonator = ctx.handler_factory.create(HandlerType.RESONATOR)
    if (args.attenuation_db is None) == (args.room_attenuation_db is None):
        raise InputError("give exactly one of --attenuation-db and --room-attenuation-db")
    attenuation = args.attenuation_db
    if attenuation is None:
        attenuation = resonator.apply_attenuation_correction(args.room_attenuation_db)
    try:
        fit = HangerFit(f0=args.f0_ghz * 1e9, q_i=args.q_i, q_e=args.q_e)
    except ValueError as e:
        raise InputError(f"invalid resonator parameters: {e}") from e
    photons = resonator.photons_from_power(args.power_dbm, attenuation, fit)
    ctx.emit(
        {"power_dbm": args.power_dbm, "attenuation_db": attenuation, "photons": photons},
        "photons.json",
    )
    return 0
