# -*- encoding: utf-8 -*-
"""Command reproducing the published device numbers."""
from __future__ import annotations

import sys

from suspended_circuits.apps.reproduce.reproduce import Reproduction, render_report
from suspended_circuits.utils.router import CommandRouter, arg
from suspended_circuits.utils.utils import output_path, write_json

router = CommandRouter()


@router.command(
    "reproduce",
    help="run every reproduction chain and write a markdown report",
    arguments=[arg("--only", nargs="+", help="chain names to run")],
)
def cmd_reproduce(args, ctx) -> int:
    reports = Reproduction(ctx.handler_factory, ctx.logger).run(args.only)
    report = render_report(reports)
    path = output_path(ctx.settings.output_dir, "reproduce_report.md")
    with open(path, "w") as f:
        f.write(report + "\n")
    write_json(
        [{**r.model_dump(), "passed": r.passed} for r in reports],
        ctx.settings.output_dir,
        "reproduce_report.json",
    )
    sys.stdout.write(report + "\n")
    ctx.logger.info(f"wrote {path}")
    return 0 if all(r.passed for r in reports) else 3
