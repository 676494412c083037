# -*- encoding: utf-8 -*-
from __future__ import annotations

from suspended_circuits.logger.circuits_logger import create_logger

__all__ = ["create_logger"]
