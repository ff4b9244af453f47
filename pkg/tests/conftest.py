import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def record():
    """Store and print one PASS/FAIL line for an acceptance criterion."""

    def _record(n: int, ok: bool, detail: str) -> None:
        line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        _LINES[n] = line
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
