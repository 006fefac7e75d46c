"""Shared fixtures for the simulator test suite."""

import pytest

from helpers import FIXTURE_NAMES, fixture_path
from pmesim.config import load_config


@pytest.fixture(scope="session")
def configs():
    return {name: load_config(fixture_path(name)) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def fig2a(configs):
    return configs["fig2a"]
