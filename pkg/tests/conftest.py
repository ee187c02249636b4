import os
import re
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from burchres import Ideal, Ring  # noqa: E402

ACCEPTANCE = {}


def record(criterion, ok: bool, detail: str) -> None:
    """Print and keep one pass/fail line; ``criterion`` is a label like 3 or "9a"."""
    label = str(criterion)
    line = f"ACCEPTANCE criterion {label:>3}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[label] = line
    print(line)


def _order(label):
    m = re.match(r"(\d+)(.*)", label)
    return int(m.group(1)), m.group(2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE, key=_order):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture
def xy():
    return Ring(("x", "y"))


@pytest.fixture
def xyz():
    return Ring(("x", "y", "z"))


@pytest.fixture
def xyzw():
    return Ring(("x", "y", "z", "w"))


def ideal(ring, *gens):
    return Ideal(ring, list(gens))
