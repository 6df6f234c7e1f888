from functools import lru_cache

import pytest

from numsg.core import NumericalSemigroup
from numsg.tree import iter_tree

# lines reported by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def semigroups_upto(max_genus):
    """Every semigroup of genus <= max_genus, in tree preorder."""
    return tuple(rec.semigroup for rec in iter_tree(NumericalSemigroup.natural(), max_genus))


@pytest.fixture(scope="session")
def upto():
    return semigroups_upto


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
