from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from brane_tiler.cli import bundled_fixtures, load_fixture  # noqa: E402
from brane_tiler.lattice import WeightLattice, build_lattices  # noqa: E402
from brane_tiler.matchings import PerfectMatching, enumerate_matchings, with_characters  # noqa: E402
from brane_tiler.mckay import AbelianGroupAction, McKayTiling, build_mckay_tiling  # noqa: E402
from brane_tiler.tiling import BraneTiling, DualQuiver, dualize, parse_tiling  # noqa: E402

ALL = bundled_fixtures()
NEGATIVE = ["c3-doubled-edge"]
CONSISTENT = [n for n in ALL if n not in NEGATIVE]

ACCEPTANCE_LINES: list[str] = []


@dataclass(frozen=True)
class Model:
    tiling: BraneTiling
    quiver: DualQuiver
    lattice: WeightLattice
    matchings: list[PerfectMatching]


@lru_cache(maxsize=None)
def model(name: str) -> Model:
    t = parse_tiling(load_fixture(name))
    q = dualize(t)
    L = build_lattices(q)
    return Model(t, q, L, with_characters(L, enumerate_matchings(t)))


@lru_cache(maxsize=None)
def mckay(n: int, weights: tuple[int, int, int]) -> McKayTiling:
    return build_mckay_tiling(AbelianGroupAction.cyclic(n, weights))


@pytest.fixture(params=ALL)
def any_fixture(request) -> Model:
    return model(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
