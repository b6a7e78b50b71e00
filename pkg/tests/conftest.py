import pytest

# lines recorded by tests/test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(label, ok, detail, seconds):
        line = f"{'PASS' if ok else 'FAIL'}  {label:<34} {seconds:8.3f}s  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
