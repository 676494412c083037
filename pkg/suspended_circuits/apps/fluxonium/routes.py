# -*- encoding: utf-8 -*-
"""Fluxonium spectrum, dispersive shift, dephasing and spectroscopy fit commands."""
from __future__ import annotations

import numpy as np

from suspended_circuits.dto.core import FluxoniumParams
from suspended_circuits.handler.handler_factory import HandlerType
from suspended_circuits.schema.exceptions import InputError
from suspended_circuits.upload.reader_factory import ReaderType
from suspended_circuits.utils.presets import DEVICE_C_READOUT, FLUXONIUM_DEVICES
from suspended_circuits.utils.router import CommandRouter, arg

router = CommandRouter("fluxonium", help="fluxonium qubit analysis")

PARAMS_ARGUMENTS = [
    arg("--params", type=float, nargs=3, metavar=("E_J", "E_C", "E_L"),
        help="energies E/h in GHz"),
    arg("--device", choices=sorted(FLUXONIUM_DEVICES), help="use a measured device"),
    arg("--dim", type=int, help="basis size (automatic when omitted)"),
]


def _params(args, phi_ext: float = np.pi) -> FluxoniumParams:
    if args.params is not None:
        e_j, e_c, e_l = args.params
        try:
            return FluxoniumParams(e_j=e_j, e_c=e_c, e_l=e_l, phi_ext=phi_ext)
        except ValueError as e:
            raise InputError(f"invalid fluxonium parameters: {e}") from e
    if args.device is not None:
        return FLUXONIUM_DEVICES[args.device].at_flux(phi_ext)
    raise InputError("give --params E_J E_C E_L or --device")


def _transition(label: str):
    if len(label) != 2 or not label.isdigit():
        raise InputError(f"transition must look like '01', got {label!r}")
    return int(label[0]), int(label[1])


@router.command(
    "spectrum",
    help="transition frequencies over a flux sweep",
    arguments=[
        *PARAMS_ARGUMENTS,
        arg("--flux-start", type=float, default=0.0, help="phi_ext / 2pi"),
        arg("--flux-stop", type=float, default=1.0, help="phi_ext / 2pi"),
        arg("--points", type=int, default=101),
        arg("--transitions", nargs="+", default=["01", "02", "03"]),
    ],
)
def cmd_spectrum(args, ctx) -> int:
    if args.points < 1:
        raise InputError("--points must be positive")
    fluxonium = ctx.handler_factory.create(HandlerType.FLUXONIUM)
    transitions = [_transition(label) for label in args.transitions]
    phi_list = 2 * np.pi * np.linspace(args.flux_start, args.flux_stop, args.points)
    table = fluxonium.spectrum_sweep(_params(args), phi_list, transitions, args.dim)
    ctx.emit({"transitions": args.transitions, "rows": table}, "spectrum.json", table, "spectrum.csv")
    return 0


@router.command(
    "chi",
    help="dispersive shift of the 0-1 transition",
    arguments=[
        *PARAMS_ARGUMENTS,
        arg("--flux", type=float,
            help="phi_ext / 2pi (dispersive operating point nearest 0.5 when omitted)"),
        arg("--g-ghz", type=float, default=DEVICE_C_READOUT["g_ghz"], help="g / 2pi"),
        arg("--fr-ghz", type=float, default=DEVICE_C_READOUT["f_r_ghz"]),
        arg("--levels", type=int),
    ],
)
def cmd_chi(args, ctx) -> int:
    fluxonium = ctx.handler_factory.create(HandlerType.FLUXONIUM)
    g = 2 * np.pi * args.g_ghz * 1e9
    omega_r = 2 * np.pi * args.fr_ghz * 1e9
    params = _params(args)
    if args.flux is None:
        phi_ext = fluxonium.operating_point(params, g, omega_r, args.dim, args.levels)
    else:
        phi_ext = 2 * np.pi * args.flux
    shift = fluxonium.dispersive_shift(
        params.at_flux(phi_ext), g=g, omega_r=omega_r, dim=args.dim, levels=args.levels,
    )
    ctx.emit(shift.record(), "chi.json")
    return 0


@router.command(
    "dephasing",
    help="thermal-photon dephasing versus resonator occupation",
    arguments=[
        arg("--kappa-mhz", type=float, default=DEVICE_C_READOUT["kappa_mhz"], help="kappa / 2pi"),
        arg("--chi-mhz", type=float, default=DEVICE_C_READOUT["chi_target_mhz"], help="chi / 2pi"),
        arg("--n-th", type=float, nargs="+",
            default=[0.0, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1]),
    ],
)
def cmd_dephasing(args, ctx) -> int:
    if args.kappa_mhz <= 0 or any(n < 0 for n in args.n_th):
        raise InputError("dephasing needs kappa > 0 and n_th >= 0")
    fluxonium = ctx.handler_factory.create(HandlerType.FLUXONIUM)
    rows = fluxonium.dephasing_sweep(
        2 * np.pi * args.kappa_mhz * 1e6, 2 * np.pi * args.chi_mhz * 1e6, args.n_th,
    )
    ctx.emit(rows, "dephasing.json", rows, "dephasing.csv")
    return 0


@router.command(
    "fit",
    help="fit E_J, E_C and E_L to spectroscopy points",
    arguments=[
        arg("points", help="CSV with phi_ext_over_2pi, transition, freq_ghz"),
        arg("--guess", type=float, nargs=3, metavar=("E_J", "E_C", "E_L"), required=True),
        arg("--dim", type=int),
    ],
)
def cmd_fit(args, ctx) -> int:
    points = ctx.read(ReaderType.SPECTROSCOPY, args.points)
    e_j, e_c, e_l = args.guess
    try:
        guess = FluxoniumParams(e_j=e_j, e_c=e_c, e_l=e_l, phi_ext=0.0)
    except ValueError as e:
        raise InputError(f"invalid initial guess: {e}") from e
    fluxonium = ctx.handler_factory.create(HandlerType.FLUXONIUM)
    fit = fluxonium.fit_params(points, guess, args.dim)
    rows = [
        {
            "phi_ext_over_2pi": p.phi_ext / (2 * np.pi),
            "transition": f"{p.transition[0]}{p.transition[1]}",
            "freq_ghz": p.freq_ghz,
            "residual_mhz": r * 1e3,
        }
        for p, r in zip(points, fit.residuals_ghz)
    ]
    ctx.emit(fit.record(), "fluxonium_fit.json", rows, "fluxonium_fit_residuals.csv")
    return 0
