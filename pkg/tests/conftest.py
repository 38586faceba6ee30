import pytest

from morsent.entropy import TABLE1_CELLS
from morsent.morse import MorseParams, eigenstate

TABLE1 = [(n, lam) for n, lams in TABLE1_CELLS.items() for lam in lams]


def table_state(n, lam, **kw):
    params = MorseParams(float(lam), **kw)
    return params, eigenstate(params, n)


@pytest.fixture(params=TABLE1, ids=lambda c: f"n{c[0]}-lam{c[1]}")
def table1_state(request):
    return table_state(*request.param)


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, label in report.user_properties:
        if key == "acceptance":
            _ACCEPTANCE.append((label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {label}")
    failed = sum(v == "FAIL" for _, v in _ACCEPTANCE)
    terminalreporter.write_line(f"{len(_ACCEPTANCE) - failed} passed, {failed} failed")


_ACCEPTANCE = []
