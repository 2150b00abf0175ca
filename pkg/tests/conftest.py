import pathlib
import random

import pytest

from topocalc import spaces
from topocalc.complex import Simplex, SimplicialComplex
from topocalc.io import read_simplex_list

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def fixture_complex(name: str) -> SimplicialComplex:
    return read_simplex_list(str(FIXTURES / name)).complex


def corpus() -> dict[str, SimplicialComplex]:
    """Named complexes used across tests: fixtures, canonical spaces, seeded randoms."""
    out = {}
    for path in sorted(FIXTURES.glob("*.cplx")):
        out[path.stem] = fixture_complex(path.name)
    for name, fn in spaces.CANONICAL.items():
        out.setdefault(name, fn())
    out["two_points"] = spaces.from_facets([(0,), (1,)])
    out["k4_graph"] = spaces.complete_graph(4)
    out["path4"] = spaces.path(4)
    two = spaces.triangle().disjoint_union(spaces.triangle())
    out["two_triangles"] = two
    from oracles import random_complex
    rng = random.Random(2024)
    for i in range(6):
        out[f"random{i}"] = random_complex(rng, max_cells=30)
    return out


@pytest.fixture(scope="session")
def corpus_complexes():
    return corpus()


def S(*v):
    return Simplex(v)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
