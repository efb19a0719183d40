import pytest

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}
    config.addinivalue_line("markers", "acceptance: headline acceptance criteria")


@pytest.fixture
def acceptance_log(request):
    """Record one PASS/FAIL line per acceptance criterion; printed at the end of the run."""
    lines = request.config.stash[_ACCEPTANCE]

    def log(number: int, title: str, ok: bool, detail: str) -> str:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
        lines[number] = line
        return line

    return log


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
