import pytest
from hypothesis import settings

from qcanon.barinv import BarEngine
from qcanon.canbasis import CanonicalSolver
from qcanon.wedge import SectorWedgeSolver, WedgeSolver

settings.register_profile("qcanon", deadline=None, max_examples=60)
settings.load_profile("qcanon")


def _cached(factory):
    store = {}

    def get(*key):
        if key not in store:
            store[key] = factory(*key)
        return store[key]

    return get


@pytest.fixture(scope="session")
def engine():
    return _cached(lambda typ, k: BarEngine(typ, k))


@pytest.fixture(scope="session")
def solver():
    return _cached(lambda typ, n, k: CanonicalSolver(BarEngine(typ, k), n))


@pytest.fixture(scope="session")
def wedge_solver(solver):
    return _cached(lambda typ, n, k: WedgeSolver(solver(typ, n, k)))


@pytest.fixture(scope="session")
def sector_wedge():
    return _cached(lambda n, k: SectorWedgeSolver(k, n))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = getattr(config, "_acceptance_rows", None)
    if rows:
        terminalreporter.section("acceptance criteria")
        for line in sorted(rows, key=lambda r: int(r.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    rows = request.config.__dict__.setdefault("_acceptance_rows", [])

    def put(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        rows.append(line)
        print(line)
        assert ok, line

    return put
