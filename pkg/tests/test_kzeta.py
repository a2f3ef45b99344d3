import pytest

from models.base import InputError, ZeroPoint
from models.module import left_ideal_module, validate_module
from varieties.kzeta import (
    PerpViolation,
    explicit_monomorphism,
    generator_map,
    k_zeta_pullback,
    k_zeta_tensor_simple,
    perp_value,
)
from varieties.rank import rank_variety


def mu(algebra, *coords):
    return algebra.field.from_ints(list(coords))


def test_generator_maps(e2):
    assert generator_map(e2, 0).shape == (1, 4, 3)


@pytest.mark.parametrize("name,coords", [("e2", (1, 0)), ("e2", (1, 1)), ("e3", (1, 6)), ("c3", (1, 1, 0))])
def test_pullback_dimension_and_exactness(name, coords, request):
    algebra = request.getfixturevalue(name)
    kzeta = k_zeta_pullback(algebra, mu(algebra, *coords))
    assert kzeta.module.d == algebra.dim
    assert kzeta.sequence_exact()
    assert validate_module(kzeta.module) == []


def test_zero_mu_is_rejected(e2):
    with pytest.raises(ZeroPoint):
        k_zeta_tensor_simple(e2, mu(e2, 0, 0))
    with pytest.raises(InputError):
        k_zeta_tensor_simple(e2, [1, 0, 0])


def test_rank_variety_is_the_perpendicular_hyperplane(e2):
    module = k_zeta_tensor_simple(e2, mu(e2, 1, 0))
    assert rank_variety(module, 1).as_lists() == [[[0], [1]]]


def test_monomorphism_for_perpendicular_pair(e2):
    mono = explicit_monomorphism(e2, mu(e2, 1, 0), mu(e2, 0, 1))
    assert mono.injective and mono.a_linear
    assert mono.source.d == 2
    assert mono.target.module.d == 4
    assert mono.matrix.shape == (1, 4, 2)


def test_monomorphism_with_a_equal_three(e3):
    lam, zeta = mu(e3, 1, 1), mu(e3, 1, 6)
    assert not perp_value(e3, lam, zeta).any()
    mono = explicit_monomorphism(e3, lam, zeta)
    assert mono.injective
    assert mono.source.d == left_ideal_module(e3, e3.generator(0) + e3.generator(1))[0].d == 6
    assert mono.target.module.d == 9


def test_non_perpendicular_pair_is_rejected(e2):
    with pytest.raises(PerpViolation):
        explicit_monomorphism(e2, mu(e2, 1, 0), mu(e2, 1, 0))
