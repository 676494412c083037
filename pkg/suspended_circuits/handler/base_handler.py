# -*- encoding: utf-8 -*-
"""Common base for the analysis handlers."""
from __future__ import annotations

from abc import ABC
from typing import TYPE_CHECKING, Optional

from suspended_circuits.dto.core import CONSTANTS, PhysicalConstants

if TYPE_CHECKING:
    import logging

    from suspended_circuits.config import Settings


class AnalysisHandler(ABC):
    """Holds the run configuration, logger and constants a handler works with.

    Handlers keep no mutable state, so one instance may serve several threads.
    """

    settings: Settings = None
    logger: logging.Logger = None
    constants: PhysicalConstants = CONSTANTS

    def __init__(
        self,
        settings: Settings,
        logger: logging.Logger,
        constants: Optional[PhysicalConstants] = None,
    ):
        self.settings = settings
        self.logger = logger
        if constants is not None:
            self.constants = constants
