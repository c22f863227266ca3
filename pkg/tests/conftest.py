import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pfholant.exact_algebra import SkewMatrix  # noqa: E402
from pfholant.fileformat import read  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"
DATA = Path(__file__).parent / "data"

CRITERIA = {}


def random_skew(rng, n, denominators=(1, 2, 3, 5)):
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            entries[(i, j)] = Fraction(rng.randint(-4, 4), rng.choice(denominators))
    return SkewMatrix.from_upper(n, entries)


def load_tsv(path):
    return [[Fraction(x) for x in line.split("\t")] for line in path.read_text().splitlines() if line]


@pytest.fixture
def rng():
    return random.Random(20260118)


@pytest.fixture(scope="session")
def example1():
    return read(INSTANCES / "example1.holo")


@pytest.fixture(scope="session")
def example2():
    return read(INSTANCES / "example2.holo")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
