import functools

import pytest

from coalspin.verifier import run_suite


@functools.lru_cache(maxsize=None)
def _cached_suite(suite_id: str):
    return run_suite(suite_id)


@pytest.fixture(scope="session")
def suite_report():
    """Run each verifier suite once per session."""
    return _cached_suite


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        number = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number}: {_ACCEPTANCE[name]}  {label}")
