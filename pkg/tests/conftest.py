import pytest
from hypothesis import settings

from tropmat.catalog import catalog_upto

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL = catalog_upto(4, 0)
MEDIUM = catalog_upto(5, 0)


def mset(*tokens):
    """Basis tokens like ``"12"`` as element tuples."""
    return [tuple(int(c) for c in t) for t in tokens]


@pytest.fixture(scope="session")
def catalog5():
    return MEDIUM


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
