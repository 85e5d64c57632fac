import pytest

from gammalab.instances import builtin_instances, paper_example_analog

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def suite():
    return builtin_instances()


@pytest.fixture(scope="session")
def analog():
    return paper_example_analog()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
