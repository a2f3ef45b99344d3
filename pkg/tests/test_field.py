import numpy as np
import pytest

from models.base import InputError
from models.field import (
    DegreeMismatch,
    ExtensionUnavailable,
    NonPrime,
    NoSuchRoot,
    ReducibleModulus,
    a_prime_discrepancy,
    compute_a_prime,
    element_order,
    first_irreducible,
    literal_a_prime,
    make_field,
    primitive_root_of_unity,
)
from settings import DEFAULT_MODULI, default_modulus


@pytest.fixture
def f5():
    return make_field(5, 1, [0, 1])


@pytest.fixture
def f4():
    return make_field(2, 2, [1, 1, 1])


def test_prime_field_arithmetic(f5):
    four = f5.element(4)
    assert four * four == 1
    assert four.inverse() == 4
    assert f5.element(2) / 3 == 4
    assert -f5.element(1) == 4


def test_modulus_reduces_powers_of_t(f4):
    t = f4.element([0, 1])
    assert t * t == t + 1
    assert t ** 3 == 1
    assert f4.order == 4


@pytest.mark.parametrize(
    "p,e,modulus,error",
    [
        (4, 1, [0, 1], NonPrime),
        (2, 2, [1, 0, 1], ReducibleModulus),
        (5, 2, [0, 1], DegreeMismatch),
        (5, 2, [2, 0, 3], DegreeMismatch),
    ],
)
def test_make_field_rejects(p, e, modulus, error):
    with pytest.raises(error):
        make_field(p, e, modulus)


def test_encode_decode_are_inverse(f4):
    indices = np.arange(f4.order)
    assert np.array_equal(f4.encode(f4.decode(indices)), indices)
    assert f4.element([1, 1]).index == 3


def test_field_elements_are_immutable(f5):
    x = f5.element(2)
    with pytest.raises(AttributeError):
        x.coeffs = (3,)


@pytest.mark.parametrize("a,p,expected", [(2, 5, 2), (2, 2, 1), (4, 2, 1), (6, 3, 2), (9, 3, 1)])
def test_a_prime_is_the_p_prime_part(a, p, expected):
    assert compute_a_prime(a, p).a_prime == expected


def test_a_prime_discrepancy_flag():
    assert literal_a_prime(4, 2) == 2
    assert a_prime_discrepancy(4, 2)
    assert not a_prime_discrepancy(2, 5)
    assert not a_prime_discrepancy(2, 2)


def test_a_prime_needs_exponent_two():
    with pytest.raises(InputError):
        compute_a_prime(1, 5)


def test_primitive_roots(f5):
    assert primitive_root_of_unity(f5, 2) == 4
    assert primitive_root_of_unity(make_field(7, 1, [0, 1]), 3) == 2
    assert primitive_root_of_unity(f5, 1) == 1
    assert primitive_root_of_unity(f5, 4) == 2


def test_primitive_root_missing(f5):
    with pytest.raises(NoSuchRoot):
        primitive_root_of_unity(f5, 3)


def test_element_order(f4):
    assert element_order(f4, f4.element([0, 1])) == 3
    assert element_order(f4, f4.element(1)) == 1


@pytest.mark.parametrize("key", sorted(DEFAULT_MODULI))
def test_default_table_follows_the_enumeration_rule(key):
    p, n = key
    assert first_irreducible(p, n) == DEFAULT_MODULI[key]
    assert default_modulus(p, n) == DEFAULT_MODULI[key]


def test_default_modulus_limit():
    with pytest.raises(ExtensionUnavailable):
        default_modulus(2, 21)


def test_extension_embeds_the_base(f4):
    ext = f4.extend(2)
    big = ext.field
    assert big.order == 16
    assert big.modulus == (1, 1, 0, 0, 1)
    t = ext.embed(f4.element([0, 1]).array)
    assert np.array_equal(big.mul(t, t), big.add(t, big.ones()))
    assert np.array_equal(ext.embed(f4.ones()), big.ones())


def test_extension_of_degree_one_is_the_same_field(f5):
    ext = f5.extend(1)
    assert ext.field == f5
    assert f5.extend(2) is f5.extend(2)


@pytest.mark.parametrize("p,modulus", [(2, [1, 1, 1]), (5, [2, 0, 1])])
def test_embedding_respects_arithmetic(p, modulus):
    small = make_field(p, 2, modulus)
    ext = small.extend(2)
    x = small.all_elements
    y = np.roll(x, 1, axis=1)
    assert np.array_equal(ext.embed(small.mul(x, y)), ext.field.mul(ext.embed(x), ext.embed(y)))
    assert np.array_equal(ext.embed(small.add(x, y)), ext.field.add(ext.embed(x), ext.embed(y)))
    assert len(set(ext.field.encode(ext.embed(x)).tolist())) == small.order
