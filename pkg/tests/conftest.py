import pytest

from artin_shortlex import Presentation, parse_word

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def da3():
    return Presentation.dihedral(3)


@pytest.fixture(scope="session")
def g333():
    return Presentation.triangle(3, 3, 3)


@pytest.fixture(scope="session")
def g345():
    return Presentation.triangle(3, 4, 5)


@pytest.fixture
def W():
    """Parse word text against a presentation: ``W("a b B", pres)``."""
    return lambda text, pres: parse_word(text, pres)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
