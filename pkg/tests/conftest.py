import pytest

from heliodec import ExperimentConfig

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def reference():
    return ExperimentConfig()


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome; asserts as well as logging it."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        _CRITERIA.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
