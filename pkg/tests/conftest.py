import pytest

_results: dict[int, tuple[bool, str]] = {}
_seen: set[int] = set()


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion: prints a pass/fail line and asserts."""
    n = request.node.get_closest_marker("criterion").args[0]
    _seen.add(n)

    def record(ok: bool, detail: str):
        _results[n] = (bool(ok), detail)
        line = f"acceptance {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        assert ok, line

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _seen:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(_seen):
        ok, detail = _results.get(n, (False, "did not complete"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
