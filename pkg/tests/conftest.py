from importlib import resources
from pathlib import Path

import pytest

from termweaver import kernels

GOLDEN = Path(str(resources.files("termweaver").joinpath("data/golden")))
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


# ---------------------------------------------------------------- acceptance report

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    _, ok = _ACCEPTANCE.get(number, (title, True))
    _ACCEPTANCE[number] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
