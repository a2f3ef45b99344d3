from math import comb

import pytest

from models.module import left_ideal_module, regular_module, simple_module
from models.resolution import (
    TooShort,
    betti_oracle,
    complexity_estimate,
    minimal_resolution,
    projective_cover,
    syzygy,
)


def test_projective_covers(e2):
    radical = syzygy(simple_module(e2))
    assert projective_cover(radical).rank == 2
    assert projective_cover(simple_module(e2)).rank == 1
    cover = projective_cover(regular_module(e2))
    assert cover.rank == 1
    assert cover.epi.shape == (1, 4, 4)


def test_syzygy_dimensions(e2, e3):
    assert syzygy(simple_module(e2)).d == 3
    assert syzygy(regular_module(e2)).d == 0
    ideal = left_ideal_module(e3, e3.generator(0))[0]
    assert ideal.d == 6
    assert syzygy(ideal).d == 9 - 6


@pytest.mark.parametrize("name", ["e2", "e3"])
def test_betti_numbers_of_k_grow_linearly_for_two_generators(name, request):
    algebra = request.getfixturevalue(name)
    res = minimal_resolution(simple_module(algebra), 6)
    assert res.betti == [1, 2, 3, 4, 5, 6, 7]
    assert res.verify() == []


def test_betti_numbers_for_three_generators(c3):
    res = minimal_resolution(simple_module(c3), 4)
    assert res.betti == [1, 3, 6, 10, 15]
    assert res.betti == [betti_oracle(3, 2, n) for n in range(5)]


def test_projective_module_resolves_in_one_step(e3):
    res = minimal_resolution(regular_module(e3), 4)
    assert res.betti == [1, 0, 0, 0, 0]
    assert res.verify() == []


def test_differential_entries_lie_in_the_radical(e2):
    res = minimal_resolution(simple_module(e2), 3)
    d1 = res.differential(1)
    assert len(d1) == 1 and len(d1[0]) == 2
    for row in res.differential(2):
        for entry in row:
            assert entry.in_radical()


@pytest.mark.parametrize(
    "c,a,expected",
    [(2, 2, [1, 2, 3, 4, 5]), (2, 3, [1, 2, 3, 4, 5]), (1, 3, [1, 1, 1, 1, 1]), (3, 3, [1, 3, 6, 10, 15])],
)
def test_betti_oracle(c, a, expected):
    assert [betti_oracle(c, a, n) for n in range(5)] == expected
    assert betti_oracle(c, a, -1) == 0


@pytest.mark.parametrize(
    "betti,expected",
    [
        ([1, 0, 0, 0, 0, 0, 0, 0], 0),
        ([2, 2, 2, 2, 2, 2, 2, 2], 1),
        ([1, 2, 3, 4, 5, 6, 7, 8], 2),
        ([1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66], 3),
    ],
)
def test_complexity_estimate(betti, expected):
    assert complexity_estimate(betti) == expected


@pytest.mark.parametrize("shift", range(5))
def test_complexity_ignores_index_shifts(shift):
    assert complexity_estimate([comb(n + 2 + shift, 2) for n in range(13)]) == 3
    assert complexity_estimate([n + 1 + shift for n in range(9)]) == 2


@pytest.mark.parametrize(
    "betti,expected",
    [
        ([1, 2, 1, 2, 1, 2, 1, 2, 1, 2], 1),
        ([1, 1, 3, 2, 5, 3, 7, 4, 9, 5, 11], 2),
        ([0, 1, 0, 1, 0, 1, 0, 1], 1),
    ],
)
def test_complexity_of_period_two_sequences(betti, expected):
    assert complexity_estimate(betti) == expected


def test_complexity_of_syzygies_of_k(c3):
    second = syzygy(syzygy(simple_module(c3)))
    betti = minimal_resolution(second, 8).betti
    assert betti[:3] == [6, 10, 15]
    assert complexity_estimate(betti) == 3


def test_complexity_needs_eight_numbers():
    with pytest.raises(TooShort):
        complexity_estimate([1, 2, 3])
