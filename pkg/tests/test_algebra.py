from itertools import product

import numpy as np
import pytest

from models.algebra import WrongRootOrder, ZeroElement, make_algebra, multiply, u_lambda
from models.base import InputError
from models.field import make_field
from models.module import left_ideal_module


def test_dimension_and_basis_order(e2, e3):
    assert e2.dim == 4
    assert e2.labels == ["1", "x2", "x1", "x1*x2"]
    assert e3.dim == 9
    assert e3.label(e3.socle_index) == "x1^2*x2^2"


def test_q_must_have_order_a_prime():
    with pytest.raises(WrongRootOrder):
        make_algebra(make_field(5, 1, [0, 1]), 2, 2, 1)


def test_commutative_case(e1):
    x1, x2 = e1.generator(0), e1.generator(1)
    assert x1 * x2 == x2 * x1
    assert e1.unity.a_prime == 1


def test_rewriting_rule(e2, e3):
    x1, x2 = e2.generator(0), e2.generator(1)
    assert multiply(e2, x1 * x2, x1).is_zero()
    assert x2 * x1 == e2.monomial([1, 1], 4)
    y1, y2 = e3.generator(0), e3.generator(1)
    assert y2 * y1 == e3.monomial([1, 1], 4)
    assert y1 * y2 == e3.monomial([1, 1])


def test_generators_are_nilpotent(e3):
    x1 = e3.generator(0)
    assert not (x1 ** 2).is_zero()
    assert (x1 ** 3).is_zero()
    assert e3.monomial([3, 0]).is_zero()


def test_unit_law(e3):
    rng = np.random.default_rng(7)
    for _ in range(10):
        u = e3.element(e3.field.random(rng, e3.dim))
        assert u * e3.one() == u
        assert e3.one() * u == u


def test_associativity_on_basis_triples(e3):
    basis = [e3.basis_element(s) for s in range(e3.dim)]
    for u, v, w in product(basis, repeat=3):
        assert (u * v) * w == u * (v * w)


def test_u_lambda_is_the_linear_form(e2):
    assert u_lambda(e2, [1, 0]) == e2.generator(0)
    with pytest.raises(InputError):
        u_lambda(e2, [1, 0, 0])


@pytest.mark.parametrize("name", ["e1", "e2", "e3", "c3"])
def test_linear_forms_are_nilpotent(name, request):
    algebra = request.getfixturevalue(name)
    rng = np.random.default_rng(0)
    for _ in range(100):
        lam = algebra.field.random(rng, algebra.c)
        assert (u_lambda(algebra, list(lam.T)) ** algebra.a).is_zero()


def test_u_lambda_square_vanishes_for_q_minus_one(e2):
    assert (u_lambda(e2, [1, 1]) ** 2).is_zero()


def test_left_and_right_matrices(e3):
    u = e3.generator(0) + e3.generator(1).scale(3)
    v = e3.generator(1) * e3.generator(1)
    product_coeffs = (u * v).coeffs
    left = e3.field.matmul(e3.left_matrix(u), v.coeffs[:, :, None])[:, :, 0]
    right = e3.field.matmul(e3.right_matrix(v), u.coeffs[:, :, None])[:, :, 0]
    assert np.array_equal(left, product_coeffs)
    assert np.array_equal(right, product_coeffs)


def test_augmentation_and_socle(e2):
    u = e2.one().scale(3) + e2.generator(0)
    assert e2.augmentation(u) == 3
    assert e2.socle_element() == e2.monomial([1, 1])
    assert e2.generator(0).in_radical()
    assert not u.in_radical()


def test_extension_keeps_q(e1):
    lifted = e1.extend(e1.field.extend(2))
    assert lifted.field.order == 4
    assert lifted.q == 1
    assert lifted.dim == e1.dim


def test_zero_ideal_generator(e2):
    with pytest.raises(ZeroElement):
        left_ideal_module(e2, e2.zero())
