import numpy as np
import pytest

from switchless_music.config import load_config
from switchless_music.forward import AnomalySpec, MediumSpec, wavenumber
from switchless_music.geometry import split_array, uniform_circle_array

ODD = tuple(range(1, 17, 2))
EVEN = tuple(range(2, 17, 2))


@pytest.fixture(scope="session")
def medium():
    return MediumSpec.relative(20.0, 0.2, 1e9)


@pytest.fixture(scope="session")
def lossless_medium():
    return MediumSpec.relative(20.0, 0.0, 1e9)


@pytest.fixture(scope="session")
def anomaly():
    return AnomalySpec.relative((0.01, 0.03), 0.01, 55.0, 1.2)


@pytest.fixture(scope="session")
def second_anomaly():
    return AnomalySpec.relative((-0.04, -0.02), 0.01, 45.0, 1.0)


@pytest.fixture(scope="session")
def array16():
    return uniform_circle_array(16, 0.09)


@pytest.fixture(scope="session")
def star_split(array16):
    return split_array(array16, ODD, EVEN)


@pytest.fixture(scope="session")
def k(medium):
    return wavenumber(medium)


@pytest.fixture(scope="session")
def example3():
    return load_config("example3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one PASS/FAIL line per acceptance criterion at the end of the run
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "seen": False})
    if call.when == "call":
        entry["seen"] = True
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "PASS" if e["ok"] and e["seen"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}")
