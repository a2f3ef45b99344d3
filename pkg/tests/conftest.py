import os

import pytest

from models.algebra import AlgebraSpec, make_algebra
from models.field import make_field
from schemas.algebra import AlgebraSchema
from storage import save_json


def prime_algebra(p: int, a: int, c: int, q: int) -> AlgebraSpec:
    return make_algebra(make_field(p, 1, [0, 1]), a, c, q)


@pytest.fixture(scope="session")
def e1() -> AlgebraSpec:
    """Commutative case: F_2, a = 2, c = 2, q = 1."""
    return prime_algebra(2, 2, 2, 1)


@pytest.fixture(scope="session")
def e2() -> AlgebraSpec:
    """F_5, a = 2, c = 2, q = -1."""
    return prime_algebra(5, 2, 2, 4)


@pytest.fixture(scope="session")
def e3() -> AlgebraSpec:
    """F_7, a = 3, c = 2, q = 2."""
    return prime_algebra(7, 3, 2, 2)


@pytest.fixture(scope="session")
def c3() -> AlgebraSpec:
    """F_5, a = 2, c = 3, q = -1."""
    return prime_algebra(5, 2, 3, 4)


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv("QCI_THREADS", "1")


@pytest.fixture
def algebra_file(tmp_path):
    """Write an algebra description and return its path."""

    def write(algebra: AlgebraSpec, name: str = "algebra.json") -> str:
        path = os.path.join(tmp_path, name)
        save_json(AlgebraSchema.from_algebra(algebra), path)
        return path

    return write
