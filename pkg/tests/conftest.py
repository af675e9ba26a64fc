import random
import sys

import pytest

# expanded iterates and long numerals are deeply nested terms
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@pytest.fixture
def rng():
    return random.Random(20240601)


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
