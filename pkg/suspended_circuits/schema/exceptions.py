# -*- encoding: utf-8 -*-
"""Errors raised by the analysis chain.

Every error carries the process exit code the CLI reports for it:
2 for unusable input, 3 for numerical or fit failures.
"""
from __future__ import annotations


class CircuitsError(Exception):
    """Base class for all suspended_circuits errors."""

    exit_code = 3


class InputError(CircuitsError):
    """A file, argument or configuration value could not be used."""

    exit_code = 2


class DegenerateCircuitError(CircuitsError):
    """The circuit matrices do not describe a solvable network."""


class BracketError(CircuitsError):
    """A root-finding bracket does not straddle the target."""


class ConvergenceError(CircuitsError):
    """An iterative procedure hit its iteration cap."""


class ResonanceProximityError(CircuitsError):
    """A qubit transition sits too close to the resonator frequency."""


class NoResonanceError(CircuitsError):
    """No resonance dip could be distinguished from noise."""


class UnidentifiableError(CircuitsError):
    """Fit parameters cannot be determined from the provided data."""


class SingularFitError(CircuitsError):
    """The fit design matrix is singular."""


class InsufficientDataError(CircuitsError):
    """Not enough data points to carry out the requested fit."""
