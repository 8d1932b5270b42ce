import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qpchar import make_algebra, make_weight  # noqa: E402


@pytest.fixture
def b2_vac():
    return make_weight(make_algebra("B", 2), 1)


@pytest.fixture
def g2_l2():
    return make_weight(make_algebra("G2"), 0, 1, 2)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, text = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
