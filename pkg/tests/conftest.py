import pytest

from symgap.rootsystem import SimpleType

SMALL_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"]
ALL_TYPES = [str(SimpleType(f, r)) for f, rs in [
    ("A", range(1, 9)), ("B", range(2, 9)), ("C", range(2, 9)), ("D", range(4, 9)),
    ("E", (6, 7, 8)), ("F", (4,)), ("G", (2,))] for r in rs]

_criteria = []


@pytest.fixture(scope="session")
def criterion_log():
    return _criteria


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for line in _criteria:
        terminalreporter.write_line(line)
