import pytest

from sftlab.sft import AdjacencyMatrix

GOLDEN = ((1, 1), (1, 0))
CAT = ((2, 1), (1, 1))


@pytest.fixture
def golden():
    return AdjacencyMatrix.from_rows(GOLDEN)


@pytest.fixture
def cat():
    return AdjacencyMatrix.from_rows(CAT)


@pytest.fixture
def full2():
    return AdjacencyMatrix.full_shift(2)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
