# -*- encoding: utf-8 -*-
"""Shared fixtures."""
import numpy as np
import pytest

from suspended_circuits.config import Settings
from suspended_circuits.handler.handler_factory import HandlerFactory, HandlerType
from suspended_circuits.logger import create_logger


@pytest.fixture(scope="session")
def settings():
    return Settings()


@pytest.fixture(scope="session")
def logger():
    return create_logger("warning")


@pytest.fixture(scope="session")
def factory(settings, logger):
    return HandlerFactory(settings, logger)


@pytest.fixture(scope="session")
def circuit(factory):
    return factory.create(HandlerType.CIRCUIT)


@pytest.fixture(scope="session")
def modes(factory):
    return factory.create(HandlerType.MODES)


@pytest.fixture(scope="session")
def fluxonium(factory):
    return factory.create(HandlerType.FLUXONIUM)


@pytest.fixture(scope="session")
def resonator(factory):
    return factory.create(HandlerType.RESONATOR)


@pytest.fixture(scope="session")
def probe(factory):
    return factory.create(HandlerType.PROBE)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
