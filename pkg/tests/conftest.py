import contextlib

import pytest

from eqpieri.perm import Permutation

ACCEPTANCE: dict[str, str] = {}

# the running example: w <=_3 u with an r_3-arrow, and v = u (2,5) without one
W_EX = Permutation.parse("631594287")
U_EX = Permutation.parse("839154267")
V_EX = Permutation.parse("859134267")


@pytest.fixture
def criterion():
    """Record PASS/FAIL for an acceptance criterion, re-raising failures."""
    @contextlib.contextmanager
    def record(label: str):
        try:
            yield
        except BaseException:
            ACCEPTANCE[label] = "FAIL"
            raise
        ACCEPTANCE[label] = "PASS"
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"[{ACCEPTANCE[label]}] {label}")
