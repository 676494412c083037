# -*- encoding: utf-8 -*-
"""Command line entry point of suspended_circuits."""
from __future__ import annotations

import argparse
import importlib
import json
import os
import sys
from typing import List, Optional

from pydantic import ValidationError

from suspended_circuits import config
from suspended_circuits.handler.handler_factory import HandlerFactory
from suspended_circuits.logger import create_logger
from suspended_circuits.schema.exceptions import CircuitsError
from suspended_circuits.utils.router import CommandContext, CommandRouter


def load_routers() -> List[CommandRouter]:
    """Collect the command routers of every package under ``apps``."""
    modules_dir = os.path.join(os.path.dirname(os.path.realpath(__file__)), "apps")
    routers = []
    for subdir in sorted(os.listdir(modules_dir)):
        sub_path = os.path.join(modules_dir, subdir)
        if os.path.isdir(sub_path) and os.path.exists(os.path.join(sub_path, "routes.py")):
            app_routes = importlib.import_module(f"suspended_circuits.apps.{subdir}.routes")
            for attribute_name in dir(app_routes):
                attribute = getattr(app_routes, attribute_name)
                if isinstance(attribute, CommandRouter):
                    routers.append(attribute)
    return routers


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suspended-circuits",
        description="Analysis of suspended Josephson junction arrays and fluxonium qubits.",
    )
    parser.add_argument(
        "--config",
        help=f"key=value configuration file (default: ${config.CONFIG_PATH_ENV})",
    )
    parser.add_argument("--log-level", help="debug, info, warning or error")
    parser.add_argument("--out", help="output directory for JSON and CSV results")
    parser.add_argument("--version", action="version", version=config.version)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for router in load_routers():
        router.include_in(subparsers)
    return parser


def _fail(message: str, exit_code: int) -> int:
    sys.stderr.write(json.dumps({"error": message, "exit_code": exit_code}) + "\n")
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = config.load_settings(
            args.config, log_level=args.log_level, output_dir=args.out,
        )
    except CircuitsError as e:
        return _fail(str(e), e.exit_code)
    logger = create_logger(settings.log_level)
    context = CommandContext(settings, logger, HandlerFactory(settings, logger))

    try:
        return args.func(args, context)
    except CircuitsError as e:
        logger.debug("command failed", exc_info=True)
        return _fail(str(e), e.exit_code)
    except ValidationError as e:
        return _fail(f"invalid input: {e}", 2)


if __name__ == "__main__":
    sys.exit(main())
