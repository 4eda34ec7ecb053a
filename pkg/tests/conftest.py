import sys

import pytest

from reesseq import groebner


@pytest.fixture(autouse=True)
def _checked_division(monkeypatch):
    # every divide() call re-verifies f = sum q_i g_i + r
    monkeypatch.setattr(groebner, "CHECK_DIVISION", True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LOG:
        terminalreporter.write_line(line)
