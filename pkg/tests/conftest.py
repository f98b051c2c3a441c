from pathlib import Path

import pytest

from splicesig import generate_random, load_diagram
from splicesig.cli import derive_seed

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def two_node():
    return load_diagram(DATA / "two_node.json")


@pytest.fixture
def trefoil():
    return load_diagram(DATA / "trefoil.json")


def random_diagrams(n, seed=0, nodes=5):
    """The same stream of generated diagrams the ``check --random`` command uses."""
    for i in range(n):
        yield generate_random(derive_seed(seed, i), nodes)


# -- one PASS/FAIL line per acceptance criterion ------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or report.outcome != "passed":
        number, title = marker
        prev = _criteria.get(number, (title, True))
        _criteria[number] = (title, prev[1] and report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
