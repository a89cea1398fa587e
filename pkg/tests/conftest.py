import numpy as np
import pytest

from tetrafit.geometry import Tetrahedron
from tetrafit.sampler import sample

from reference_values import REFERENCE_VERTICES


@pytest.fixture(scope="session")
def ref_tet():
    return Tetrahedron.from_array(REFERENCE_VERTICES)


@pytest.fixture(scope="session")
def unit_simplex():
    return Tetrahedron.from_array([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture(scope="session")
def ref_sample_100k(ref_tet):
    return sample(ref_tet, 100_000, seed=20240501)


def random_tetrahedra(count, seed, low=-10.0, high=10.0, min_volume=0.5):
    """Non-degenerate random tetrahedra with coordinates in [low, high]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        tet = Tetrahedron.from_array(rng.uniform(low, high, (4, 3)))
        vol = abs(np.linalg.det(np.c_[tet.to_array(), np.ones(4)])) / 6
        if vol >= min_volume:
            out.append(tet)
    return out


def separated_tetrahedra(count, seed, low=-5.0, high=5.0, min_gap=0.15, min_volume=5.0):
    """Random tetrahedra whose sorted coordinates on every axis are at least
    ``min_gap`` times that axis's range apart."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        cols = []
        while len(cols) < 3:
            c = np.sort(rng.uniform(low, high, 4))
            if np.diff(c).min() >= min_gap * (c[-1] - c[0]):
                cols.append(rng.permutation(c))
        arr = np.column_stack(cols)
        if abs(np.linalg.det(np.c_[arr, np.ones(4)])) / 6 >= min_volume:
            out.append(Tetrahedron.from_array(arr))
    return out


_CRITERIA = []


@pytest.fixture
def record_criterion():
    """Record one acceptance line; the lines are echoed in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}"
        if detail:
            line += f" ({detail})"
        _CRITERIA.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
