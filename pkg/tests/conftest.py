import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from curvefam.polycore import MPoly

FIXTURE_DIR = Path(__file__).parent / "fixtures"

V4 = ("x", "y", "t", "s")


def _vars4():
    return tuple(MPoly.var(v, V4) for v in V4)


@pytest.fixture(scope="session")
def cassini():
    x, y, t, s = _vars4()
    return (x**2 + y**2 + t**2) ** 2 - 4 * t**2 * x**2 - s**4


@pytest.fixture(scope="session")
def linear_system():
    x, y, t, s = _vars4()
    return -1 + x**2 + t * (x - y) + s * (x**3 - y)


@pytest.fixture(scope="session")
def offset_parabola():
    V = ("x", "y", "p", "d")
    x, y, p, d = (MPoly.var(v, V) for v in V)
    return (
        -8 * d**2 * y**2 * x**2 + y**4 * p**2 + 4 * x**2 * y**4 + 4 * y**6
        - 12 * d**2 * y**4 + 12 * y**2 * d**4 + 4 * d**4 * x**2 - 4 * d**6
        - 20 * p**2 * d**2 * y**2 + 4 * p * y**2 * x * d**2 - 4 * p**4 * d**2
        - 8 * p**2 * d**4 - 8 * p**2 * d**2 * x**2 - 16 * p * x**3 * d**2
        - 16 * p * x**3 * y**2 + 32 * p**2 * y**2 * x**2 - 4 * p**3 * y**2 * x
        - 20 * p * x * y**4 + 16 * p * x * d**4 + 16 * p**3 * d**2 * x
        + 16 * p**2 * x**4 - 16 * p**3 * x**3 + 4 * p**4 * x**2
    )


@pytest.fixture(scope="session")
def cassini_decomposition(cassini):
    from curvefam.family2d import decompose, normalize_family

    fi = normalize_family(cassini)
    return decompose(fi, topology=True)


@pytest.fixture(scope="session")
def linear_decomposition(linear_system):
    from curvefam.family2d import decompose, normalize_family

    fi = normalize_family(linear_system)
    return decompose(fi, topology=True)
