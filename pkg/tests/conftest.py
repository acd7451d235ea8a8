from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

from takiffalg import catalog  # noqa: E402


@pytest.fixture(scope="session")
def sl2():
    return catalog.load("sl2")


@pytest.fixture(scope="session")
def sl3():
    return catalog.load("sl3")


@pytest.fixture(scope="session")
def heis1():
    return catalog.load("heis1")


@pytest.fixture(scope="session")
def heis2():
    return catalog.load("heis2")


@pytest.fixture(scope="session")
def sl2_family_m1(sl2):
    from takiffalg.raistauvel import build_family
    return build_family(sl2.algebra, 1, sl2.invariants)
