import pytest

from gbackdoor.figures import load_figure

# acceptance results collected by test_acceptance.py, printed at the end
ACCEPTANCE = {}


@pytest.fixture
def fig():
    return load_figure


@pytest.fixture
def acceptance():
    def record(key, passed, detail):
        ACCEPTANCE[key] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if passed else 'FAIL'}  {detail}")
