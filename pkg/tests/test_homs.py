import pytest

from models.base import AlgebraMismatch
from models.homs import Verdict, hom_basis, hom_space, is_isomorphic, period_of, stable_hom_dim
from models.module import direct_sum, left_ideal_module, regular_module, simple_module
from models.resolution import syzygy


@pytest.fixture
def ideal_x1(e2):
    return left_ideal_module(e2, e2.generator(0))[0]


def test_hom_dimensions(e2, ideal_x1):
    k = simple_module(e2)
    assert hom_basis(k, k).dim == 1
    assert hom_basis(regular_module(e2), regular_module(e2)).dim == 4
    assert hom_basis(ideal_x1, k).dim == 1


def test_hom_basis_elements_intertwine(e2, ideal_x1):
    field = e2.field
    space = hom_basis(ideal_x1, regular_module(e2))
    for n in range(space.dim):
        f = space.basis[:, n]
        for i in range(e2.c):
            assert (field.matmul(f, ideal_x1.X(i)) == field.matmul(regular_module(e2).X(i), f)).all()


def test_stable_hom_dimensions(e2, ideal_x1):
    k = simple_module(e2)
    assert stable_hom_dim(k, k) == 1
    assert stable_hom_dim(ideal_x1, k) == 1
    assert stable_hom_dim(regular_module(e2), k) == 0
    assert stable_hom_dim(regular_module(e2), ideal_x1) == 0
    assert hom_space(k, k).stable_dim == 1


def test_isomorphism_verdicts(e2, ideal_x1):
    k = simple_module(e2)
    assert is_isomorphic(ideal_x1, ideal_x1) == Verdict.YES
    assert is_isomorphic(k, regular_module(e2)) == Verdict.NO
    assert is_isomorphic(syzygy(ideal_x1), ideal_x1) == Verdict.YES
    x2 = left_ideal_module(e2, e2.generator(1))[0]
    assert is_isomorphic(ideal_x1, x2) == Verdict.NO


def test_isomorphism_needs_one_algebra(e2, e3):
    with pytest.raises(AlgebraMismatch):
        is_isomorphic(simple_module(e2), simple_module(e3))


def test_periods(e2, e3, ideal_x1):
    assert period_of(ideal_x1, 4) == (Verdict.YES, 1)
    cube_ideal = left_ideal_module(e3, e3.generator(0))[0]
    assert period_of(cube_ideal, 4) == (Verdict.YES, 2)
    assert period_of(simple_module(e2), 4)[0] == Verdict.NO
    assert period_of(regular_module(e2), 4) == (Verdict.NO, None)


def test_period_of_a_sum_of_syzygy_partners(e3):
    u = e3.generator(0) + e3.generator(1)
    pair = direct_sum(left_ideal_module(e3, u)[0], left_ideal_module(e3, u ** 2)[0])
    assert period_of(pair, 3) == (Verdict.YES, 1)
