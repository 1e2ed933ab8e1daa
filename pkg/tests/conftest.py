import pytest

_RESULTS_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS_KEY] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the end-of-run summary."""
    results = request.config.stash[_RESULTS_KEY]

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        results[number] = (title, ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, detail = results[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
