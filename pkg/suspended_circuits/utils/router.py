# -*- encoding: utf-8 -*-
"""Command registration for the command line front end."""
from __future__ import annotations

import sys
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterable, List, Optional, Tuple

from suspended_circuits.upload.reader_factory import ReaderFactory, ReaderType
from suspended_circuits.utils.utils import to_json, write_csv, write_json

if TYPE_CHECKING:
    import argparse
    import logging

    from suspended_circuits.config import Settings
    from suspended_circuits.handler.handler_factory import HandlerFactory

Argument = Tuple[Tuple[str, ...], Dict[str, Any]]
CommandFunc = Callable[["argparse.Namespace", "CommandContext"], int]


def arg(*flags: str, **kwargs: Any) -> Argument:
    """Declare an argparse argument for ``CommandRouter.command``."""
    return flags, kwargs


class CommandContext:
    """What a command needs to run: configuration, logger, handlers and readers."""

    def __init__(
        self,
        settings: Settings,
        logger: logging.Logger,
        handler_factory: HandlerFactory,
    ):
        self.settings = settings
        self.logger = logger
        self.handler_factory = handler_factory
        self.reader_factory = ReaderFactory()

    def read(self, reader_type: ReaderType, path: str):
        return self.reader_factory.create(reader_type).read(path)

    def emit(
        self,
        result: Any,
        json_name: str,
        rows: Optional[Iterable[dict]] = None,
        csv_name: Optional[str] = None,
    ) -> None:
        """Print ``result`` as JSON and store it (plus an optional CSV table)."""
        sys.stdout.write(to_json(result) + "\n")
        path = write_json(result, self.settings.output_dir, json_name)
        self.logger.info(f"wrote {path}")
        if rows is not None and csv_name is not None:
            path = write_csv(rows, self.settings.output_dir, csv_name)
            self.logger.info(f"wrote {path}")


class Command:
    def __init__(self, name: str, func: CommandFunc, help: str, arguments: List[Argument]):
        self.name = name
        self.func = func
        self.help = help
        self.arguments = arguments


class CommandRouter:
    """Collects commands; a named router becomes a subcommand group."""

    def __init__(self, name: Optional[str] = None, help: str = ""):
        self.name = name
        self.help = help
        self.commands: List[Command] = []

    def command(
        self, name: str, help: str = "", arguments: Iterable[Argument] = (),
    ) -> Callable[[CommandFunc], CommandFunc]:
        def decorator(func: CommandFunc) -> CommandFunc:
            self.commands.append(Command(name, func, help or (func.__doc__ or ""), list(arguments)))
            return func

        return decorator

    def include_in(self, subparsers: argparse._SubParsersAction) -> None:
        target = subparsers
        if self.name:
            group = subparsers.add_parser(self.name, help=self.help)
            target = group.add_subparsers(dest=f"{self.name}_command", required=True)
        for command in self.commands:
            parser = target.add_parser(command.name, help=command.help)
            for flags, kwargs in command.arguments:
                parser.add_argument(*flags, **kwargs)
            parser.set_defaults(func=command.func)
