import pytest

from symtens import QQ, ZZ, Context, ModRing

GF2 = ModRing(2)
RINGS = [ZZ, QQ, GF2]


@pytest.fixture(params=RINGS, ids=["ZZ", "QQ", "GF2"])
def ring(request):
    return request.param


@pytest.fixture
def ctx22():
    return Context(ZZ, 2, 2)


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(line)
