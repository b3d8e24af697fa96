import functools

import pytest

from teichgap import constructions as C

_ACCEPTANCE: list[tuple[int, str, str, float, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, limit): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when != "call":
        return
    number, limit = mark.args
    _ACCEPTANCE.append((number, item.name, "PASS" if report.passed else "FAIL",
                        report.duration, limit))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, status, duration, limit in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:>2}: {status}  {name}  ({duration:.2f}s, limit {limit:g}s)")


@functools.lru_cache(maxsize=None)
def _y(k):
    return C.build_Y(k)


@functools.lru_cache(maxsize=None)
def _z(k):
    return C.build_Z(k)


@pytest.fixture(scope="session")
def X():
    return C.build_X()


@pytest.fixture(scope="session")
def E2():
    return C.build_E2()


@pytest.fixture(scope="session")
def build_y():
    return _y


@pytest.fixture(scope="session")
def build_z():
    return _z
