import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from semmap import catalog  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def n1():
    return catalog.get("N1").map


@pytest.fixture(scope="session")
def tetra():
    return catalog.get("tetrahedron").map


@pytest.fixture(scope="session")
def rp2():
    return catalog.get("rp2_6").map


@pytest.fixture(scope="session")
def k410():
    return [catalog.get("K1_3-4_10").map, catalog.get("K2_3-4_10").map]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# -- acceptance report --------------------------------------------------------

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when == "teardown":
        return
    if rep.when == "setup" and rep.passed:
        item._setup_secs = rep.duration
        return
    num, title = mark.args
    results = item.config._acceptance.setdefault(num, [title, []])
    results[1].append((rep.outcome, rep.duration + getattr(item, "_setup_secs", 0.0)))


def pytest_terminal_summary(terminalreporter, config):
    res = getattr(config, "_acceptance", {})
    if not res:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(res):
        title, runs = res[num]
        ok = all(o == "passed" for o, _ in runs)
        secs = sum(d for _, d in runs)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {num:>2}. {title}  ({secs:.1f} s)")
