import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def e6():
    from rsquantum.rootsystem import build

    return build("E", 6)


@pytest.fixture(scope="session")
def P6(e6):
    from rsquantum.pbw import engine

    return engine(e6)


@pytest.fixture(scope="session")
def a2():
    from rsquantum.rootsystem import build

    return build("A", 2)


@pytest.fixture(scope="session")
def a3():
    from rsquantum.rootsystem import build

    return build("A", 3)


CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
