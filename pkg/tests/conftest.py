import pytest

from mourre_tree.tree import TreeGeometry

ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_line():
    """Record a one-line verdict for an acceptance criterion."""
    def record(number, ok, detail):
        ACCEPTANCE_LINES[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture(params=range(0, 7), ids=lambda d: f"D{d}")
def small_tree(request):
    return TreeGeometry(request.param)
