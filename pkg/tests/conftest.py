import sys

import pytest

from geocalc.connection import levi_civita
from geocalc.scenarios import (
    euclid3_geometry,
    flat_polar_geometry,
    minkowski_geometry,
    nunes_connection,
    random_torsion,
    sphere_geometry,
)
from geocalc.connection import from_contorsion


@pytest.fixture(scope="session")
def s2():
    return sphere_geometry()


@pytest.fixture(scope="session")
def s2_lc(s2):
    return levi_civita(s2)


@pytest.fixture(scope="session")
def s2_nunes(s2):
    return nunes_connection(s2)


@pytest.fixture(scope="session")
def polar():
    return flat_polar_geometry()


@pytest.fixture(scope="session")
def polar_lc(polar):
    return levi_civita(polar)


@pytest.fixture(scope="session")
def e3():
    return euclid3_geometry()


@pytest.fixture(scope="session")
def e3_rc(e3):
    return from_contorsion(e3, random_torsion(e3, 7))


@pytest.fixture(scope="session")
def mink():
    return minkowski_geometry()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
