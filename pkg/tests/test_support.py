import numpy as np
import pytest

from models import linalg
from models.module import left_ideal_module, regular_module, simple_module
from tests.conftest import prime_algebra
from varieties.support import (
    AnnihilatorIdeal,
    Polynomial,
    WindowTooSmall,
    annihilator_ideal,
    evaluate,
    ext_generators,
    monomials,
    simple_resolution_prefix,
    support_variety,
    support_variety_points,
    z_action_matrices,
)


def ideal_of(field, c, polys):
    return AnnihilatorIdeal(field, c, 2, 2, True, [0], polys)


def test_prefix_generators(e2, e3):
    prefix = simple_resolution_prefix(e2)
    assert prefix.rank2 == 3
    assert prefix.labels == ["x1 e1", "x2 e2", "q x2 e1 - x1 e2"]
    assert prefix.verify() == []
    assert simple_resolution_prefix(e3).labels == ["x1^2 e1", "x2^2 e2", "q x2 e1 - x1 e2"]


def test_prefix_for_one_generator():
    prefix = simple_resolution_prefix(prime_algebra(7, 3, 1, 2))
    assert prefix.rank2 == 1
    assert prefix.labels == ["x1^2 e1"]


def test_z_action_on_ext_of_k(e2):
    data = z_action_matrices(simple_module(e2), 6)
    assert data.betti == [1, 2, 3, 4, 5, 6, 7]
    z1, z2 = data.z[0][0], data.z[1][0]
    assert z1.shape == (1, 3, 1)
    assert linalg.rank(e2.field, z1) == 1
    assert linalg.rank(e2.field, np.concatenate([z1, z2], axis=2)) == 2
    assert data.commutativity_violations() == []


def test_z_action_does_not_depend_on_lifts(e3):
    module = left_ideal_module(e3, e3.generator(0))[0]
    plain = z_action_matrices(module, 6)
    for seed in (1, 2):
        perturbed = z_action_matrices(module, 6, seed=seed)
        for ours, theirs in zip(plain.z, perturbed.z):
            assert all((x == y).all() for x, y in zip(ours, theirs))


def test_z_action_vanishes_on_projectives(e2):
    data = z_action_matrices(regular_module(e2), 4)
    assert data.betti == [1, 0, 0, 0, 0]
    assert all(m.size == 0 for row in data.z for m in row)


def test_ext_generators_of_k(e2):
    data = z_action_matrices(simple_module(e2), 6)
    degrees = sorted({n for n, _ in ext_generators(data)})
    assert degrees == [0, 1, 2]


def test_annihilator_of_k_is_zero(e2):
    ideal = support_variety(simple_module(e2), degree_bound=4)
    assert ideal.generators == []
    assert ideal.stabilized
    assert ideal.effective_bound == 4
    assert len(support_variety_points(ideal, 1)) == 6


def test_annihilator_of_a_projective_is_maximal(e2):
    ideal = annihilator_ideal(z_action_matrices(regular_module(e2), 6), 2)
    assert [p.degree for p in ideal.generators] == [1, 1]
    assert len(support_variety_points(ideal, 1)) == 0
    assert len(support_variety_points(ideal, 2)) == 0


def test_support_variety_of_a_cyclic_ideal(e2):
    module = left_ideal_module(e2, e2.generator(0))[0]
    ideal = support_variety(module, degree_bound=4)
    assert ideal.stabilized
    assert support_variety_points(ideal, 1).as_lists() == [[[1], [0]]]
    assert len(support_variety_points(ideal, 2)) == 1


def test_window_checks(e2):
    data = z_action_matrices(simple_module(e2), 6)
    with pytest.raises(WindowTooSmall):
        annihilator_ideal(data, 3)
    with pytest.raises(WindowTooSmall):
        annihilator_ideal(data, 6)


def test_monomial_order():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials(3, 0) == [(0, 0, 0)]


def test_zero_sets_of_hand_made_ideals(e2):
    field = e2.field
    z1 = Polynomial([(1, 0), (0, 1)], field.from_ints([1, 0]))
    z2 = Polynomial([(1, 0), (0, 1)], field.from_ints([0, 1]))
    difference = Polynomial(monomials(2, 2), field.from_ints([1, 0, 4]))
    assert len(support_variety_points(ideal_of(field, 2, []), 1)) == 6
    assert len(support_variety_points(ideal_of(field, 2, [z1, z2]), 1)) == 0
    assert support_variety_points(ideal_of(field, 2, [z2]), 1).as_lists() == [[[1], [0]]]
    assert support_variety_points(ideal_of(field, 2, [difference]), 1).as_lists() == [[[1], [1]], [[1], [4]]]


def test_evaluate(e2):
    field = e2.field
    poly = Polynomial(monomials(2, 2), field.from_ints([1, 2, 3]))
    points = field.from_ints([[1, 1], [2, 0]])
    assert evaluate(field, poly, points).tolist() == [[1, 4]]
