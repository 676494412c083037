# -*- encoding: utf-8 -*-
"""Factory for creating handlers."""
from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING, Optional

from suspended_circuits.handler.circuit_handler import CircuitHandler
from suspended_circuits.handler.fluxonium_handler import FluxoniumHandler
from suspended_circuits.handler.modes_handler import ModesHandler
from suspended_circuits.handler.probe_handler import ProbeHandler
from suspended_circuits.handler.resonator_handler import ResonatorHandler

if TYPE_CHECKING:
    import logging

    from suspended_circuits.config import Settings
    from suspended_circuits.dto.core import PhysicalConstants


class HandlerType(Enum):
    CIRCUIT = "circuit"
    MODES = "modes"
    FLUXONIUM = "fluxonium"
    RESONATOR = "resonator"
    PROBE = "probe"


_HANDLERS = {
    HandlerType.CIRCUIT: CircuitHandler,
    HandlerType.MODES: ModesHandler,
    HandlerType.FLUXONIUM: FluxoniumHandler,
    HandlerType.RESONATOR: ResonatorHandler,
    HandlerType.PROBE: ProbeHandler,
}


class HandlerFactory:
    def __init__(
        self,
        settings: Settings,
        logger: logging.Logger,
        constants: Optional[PhysicalConstants] = None,
    ):
        self.settings = settings
        self.logger = logger
        self.constants = constants

    def create(self, handler_type: HandlerType):
        handler_class = _HANDLERS.get(handler_type)
        if handler_class is None:
            raise ValueError("Unknown handler type: " + str(handler_type))
        return handler_class(self.settings, self.logger, self.constants)
