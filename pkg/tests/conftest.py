import pytest

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance verdict: ``criterion(name, passed, detail)``."""
    def record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE[name] = (passed, detail)
        print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
