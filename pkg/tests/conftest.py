import pytest

# filled by test_acceptance.py: (name, passed, detail)
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture
def threads(monkeypatch):
    def set_threads(n):
        monkeypatch.setenv("ETA_RICCATI_THREADS", str(n))
    return set_threads
