import numpy as np
import pytest

from models import linalg
from models.base import InconsistentSystem
from models.field import make_field


@pytest.fixture
def f5():
    return make_field(5, 1, [0, 1])


@pytest.fixture
def f4():
    return make_field(2, 2, [1, 1, 1])


def matrix(field, rows):
    return field.from_ints(rows)


def test_rank_and_kernel(f5):
    a = matrix(f5, [[1, 2, 3], [2, 4, 2]])
    assert linalg.rank(f5, a) == 2
    basis, free = linalg.kernel(f5, a)
    assert free == [1]
    assert basis.shape == (1, 3, 1)
    assert linalg.is_zero(f5.matmul(a, basis))


def test_rank_of_empty_matrix(f5):
    assert linalg.rank(f5, f5.zeros(3, 0)) == 0


def test_solver_particular_solution(f5):
    a = matrix(f5, [[1, 1], [1, 4]])
    b = f5.from_ints([2, 0])
    x = linalg.solve(f5, a, b)
    assert np.array_equal(f5.matmul(a, x[:, :, None])[:, :, 0], b)


def test_inconsistent_system(f5):
    a = matrix(f5, [[1, 1], [2, 2]])
    with pytest.raises(InconsistentSystem):
        linalg.solve(f5, a, f5.from_ints([1, 0]))
    assert not linalg.Solver(f5, a).consistent(f5.from_ints([1, 0]))


def test_inverse_over_extension_field(f4):
    t = f4.element([0, 1]).array
    a = f4.zeros(2, 2)
    a[:, 0, 0] = t
    a[:, 0, 1] = f4.ones()
    a[:, 1, 1] = t
    inv = linalg.inverse(f4, a)
    assert np.array_equal(f4.matmul(a, inv), f4.identity(2))


def test_singular_matrix_has_no_inverse(f5):
    with pytest.raises(InconsistentSystem):
        linalg.inverse(f5, matrix(f5, [[1, 2], [2, 4]]))


def test_batch_invertible(f5):
    batch = np.stack([f5.identity(2), matrix(f5, [[1, 2], [2, 4]]), matrix(f5, [[0, 1], [1, 0]])], axis=1)
    assert linalg.batch_invertible(f5, batch).tolist() == [True, False, True]


def test_complement_columns(f5):
    span = matrix(f5, [[1], [1], [0]])
    assert linalg.complement_columns(f5, span, 3) == [1, 2]


def test_kron_and_block_diag(f5):
    a = matrix(f5, [[1, 2], [3, 4]])
    eye = f5.identity(2)
    assert linalg.kron(f5, eye, a).shape == (1, 4, 4)
    assert np.array_equal(linalg.block_diag(f5, [a, a]), linalg.kron(f5, eye, a))
