import pytest

# (criterion number, PASS/FAIL, detail) lines collected by the acceptance suite.
VERDICTS: list[tuple[int, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(VERDICTS):
        terminalreporter.write_line(f"{verdict} criterion {number}: {detail}")


@pytest.fixture
def verdict():
    """Record and print a criterion's outcome, then fail the test if it did not hold."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = ("PASS" if ok else "FAIL", detail)
        VERDICTS.append((number, *line))
        print(f"{line[0]} criterion {number}: {detail}")
        assert ok, detail

    return record
