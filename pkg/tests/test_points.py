import numpy as np
import pytest

from models.base import ZeroPoint
from models.field import make_field
from models.points import ProjectivePointSet, enumerate_points, normalize, point_count


@pytest.fixture
def f5():
    return make_field(5, 1, [0, 1])


def test_enumeration_order(f5):
    points = enumerate_points(f5, 2)
    assert point_count(f5, 2) == 6
    assert np.moveaxis(points, 0, 2)[..., 0].tolist() == [[1, 0], [1, 1], [1, 2], [1, 3], [1, 4], [0, 1]]
    assert point_count(f5, 3) == 31
    assert enumerate_points(f5, 3).shape == (1, 31, 3)


def test_normalize(f5):
    points = f5.from_ints([[2, 4], [0, 3]])
    assert normalize(f5, points)[0].tolist() == [[1, 2], [0, 1]]
    with pytest.raises(ZeroPoint):
        normalize(f5, f5.from_ints([[0, 0]]))


def test_point_sets_merge_scalar_multiples(f5):
    points = ProjectivePointSet.build(f5, 1, 2, f5.from_ints([[1, 2], [2, 4], [0, 3]]))
    assert len(points) == 2
    assert f5.from_ints([3, 1]) in points
    assert f5.from_ints([1, 1]) not in points
    assert points.as_lists() == [[[1], [2]], [[0], [1]]]


def test_set_operations(f5):
    first = ProjectivePointSet.build(f5, 1, 2, f5.from_ints([[1, 0], [1, 1]]))
    second = ProjectivePointSet.build(f5, 1, 2, f5.from_ints([[1, 1], [0, 1]]))
    assert len(first.union(second)) == 3
    assert len(first.intersection(second)) == 1
    assert first.difference(second) == ProjectivePointSet.build(f5, 1, 2, f5.from_ints([[1, 0]]))
    assert first.intersection(second).issubset(first)
    assert not first.issubset(second)


def test_power_map_merges_images(f5):
    points = ProjectivePointSet.build(f5, 1, 2, f5.from_ints([[1, 2], [1, 3]]))
    image = points.map_power(2)
    assert image.as_lists() == [[[1], [4]]]


def test_empty_set(f5):
    empty = ProjectivePointSet.build(f5, 1, 2, f5.zeros(0, 2))
    assert len(empty) == 0
    assert empty.map_power(2) == empty
