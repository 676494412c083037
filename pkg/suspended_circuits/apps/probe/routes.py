# -*- encoding: utf-8 -*-
"""Room-temperature probe command."""
from __future__ import annotations

from suspended_circuits.handler.handler_factory import HandlerType
from suspended_circuits.upload.reader_factory import ReaderType
from suspended_circuits.utils.router import CommandRouter, arg

router = CommandRouter()


@router.command(
    "probe-fit",
    help="parallel resistance model fit and Josephson inductance",
    arguments=[arg("dataset", help="CSV with n_junctions, resistance_ohm")],
)
def cmd_probe(args, ctx) -> int:
    dataset = ctx.read(ReaderType.PROBE, args.dataset)
    probe = ctx.handler_factory.create(HandlerType.PROBE)
    fit = probe.fit_probe(dataset)
    i_c = probe.ab_critical_current(fit.r_junction)
    result = {
        **fit.record(),
        "gap_uev": ctx.settings.gap_uev,
        "i_c_a": i_c,
        "l_j_nh": probe.junction_inductance(i_c) * 1e9,
    }
    ctx.emit(result, "probe_fit.json")
    return 0
