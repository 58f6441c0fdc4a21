import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pretopgroups.fixtures import p4, p6  # noqa: E402


@pytest.fixture
def P6():
    return p6()


@pytest.fixture
def P4():
    return p4()


def m(where, *labels):
    """Mask of the given labels in a universe (or a group's universe)."""
    uni = getattr(where, "universe", where)
    return uni.mask(str(x) for x in labels)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.summary_lines():
            terminalreporter.write_line(line)
