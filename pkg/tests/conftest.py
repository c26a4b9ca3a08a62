import pytest

from aljabar import GameConfig, GroupParams, standard_palette

_ACCEPTANCE_RESULTS = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1].replace("test_", "", 1)
        _ACCEPTANCE_RESULTS.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"[{mark}] {name}")


@pytest.fixture(scope="session")
def p23():
    return GroupParams(2, 3)


@pytest.fixture(scope="session")
def pal23(p23):
    return standard_palette(p23)


@pytest.fixture(scope="session")
def p32():
    return GroupParams(3, 2)


@pytest.fixture(scope="session")
def pal32(p32):
    return standard_palette(p32)


@pytest.fixture
def standard_config():
    return GameConfig(m=2, n=3, players=2, copies_per_color=10, seed=12345)


def vectors(palette, codes):
    """Spell a multiset as codes: vectors(pal, 'RBY') or ['R','B','Y']."""
    return palette.vectors_of(list(codes))
