import random

import pytest

from flowering.field import PrimeField
from flowering.instances import a4_sequence, k4_sequence, z2r_sequence


@pytest.fixture(scope="session")
def f101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def a4_seq():
    return a4_sequence()


@pytest.fixture(scope="session")
def k4_seq():
    return k4_sequence()


@pytest.fixture(scope="session")
def z2r3_seq():
    return z2r_sequence(3)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def lps_5_13():
    from flowering.lps import lps_graph

    return lps_graph(5, 13)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE_KEY, None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        terminalreporter.write_line(log[number])
