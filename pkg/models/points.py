"""Finite sets of points of projective space P^{c-1} over a finite field.

A point is stored as its normalized representative (first nonzero coordinate
equal to 1) in coefficient planes: a set of n points has shape (e, n, c).
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from models.base import ZeroPoint
from models.field import Field


def normalize(field: Field, points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64) % field.p
    nonzero = field.nonzero(points)
    if not nonzero.any(axis=-1).all():
        raise ZeroPoint()
    lead = np.argmax(nonzero, axis=-1)
    rows = np.arange(points.shape[1])
    scale = field.inv(points[:, rows, lead])
    return field.mul(scale[:, :, None], points)


def enumerate_points(field: Field, c: int) -> np.ndarray:
    """Every point of P^{c-1}(field): leading position ascending, then the
    remaining coordinates in element enumeration order (first one slowest)."""
    order = field.order
    chunks = []
    for lead in range(c):
        rest = c - lead - 1
        count = order ** rest
        idx = np.zeros((count, c), dtype=np.int64)
        idx[:, lead] = 1
        serial = np.arange(count)
        for k in range(rest):
            idx[:, c - 1 - k] = (serial // order ** k) % order
        chunks.append(field.decode(idx))
    return np.concatenate(chunks, axis=1)


def point_count(field: Field, c: int) -> int:
    return sum(field.order ** k for k in range(c))


def power_map(field: Field, points: np.ndarray, a: int) -> np.ndarray:
    """Coordinatewise a-th power, renormalized."""
    if points.shape[1] == 0:
        return points
    return normalize(field, field.power(points, a))


def _sort_key(key: tuple) -> tuple:
    lead = next(i for i, x in enumerate(key) if x)
    return (lead,) + key


@dataclass
class ProjectivePointSet:
    field: Field
    ext_degree: int
    c: int
    points: np.ndarray
    enumerated: int

    @classmethod
    def build(cls, field: Field, ext_degree: int, c: int, points, enumerated: int = 0) -> "ProjectivePointSet":
        """Normalize, merge duplicates and sort into enumeration order."""
        points = np.asarray(points, dtype=np.int64).reshape(field.e, -1, c)
        if points.shape[1]:
            points = normalize(field, points)
        keys = {tuple(int(x) for x in row) for row in field.encode(points)}
        ordered = sorted(keys, key=_sort_key)
        if ordered:
            stacked = field.decode(np.array(ordered, dtype=np.int64))
        else:
            stacked = field.zeros(0, c)
        return cls(field, ext_degree, c, stacked, enumerated)

    def keys(self) -> set[tuple]:
        return {tuple(int(x) for x in row) for row in self.field.encode(self.points)}

    def __len__(self) -> int:
        return self.points.shape[1]

    def __contains__(self, point) -> bool:
        point = np.asarray(point, dtype=np.int64).reshape(self.field.e, 1, self.c)
        key = tuple(int(x) for x in self.field.encode(normalize(self.field, point))[0])
        return key in self.keys()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjectivePointSet)
            and self.field == other.field
            and self.c == other.c
            and self.keys() == other.keys()
        )

    def _from_keys(self, keys: Iterable[tuple]) -> "ProjectivePointSet":
        keys = list(keys)
        arr = self.field.decode(np.array(keys, dtype=np.int64).reshape(-1, self.c))
        return ProjectivePointSet.build(self.field, self.ext_degree, self.c, arr, self.enumerated)

    def union(self, other: "ProjectivePointSet") -> "ProjectivePointSet":
        return self._from_keys(self.keys() | other.keys())

    def intersection(self, other: "ProjectivePointSet") -> "ProjectivePointSet":
        return self._from_keys(self.keys() & other.keys())

    def difference(self, other: "ProjectivePointSet") -> "ProjectivePointSet":
        return self._from_keys(self.keys() - other.keys())

    def issubset(self, other: "ProjectivePointSet") -> bool:
        return self.keys() <= other.keys()

    def map_power(self, a: int) -> "ProjectivePointSet":
        return ProjectivePointSet.build(
            self.field, self.ext_degree, self.c, power_map(self.field, self.points, a), self.enumerated
        )

    def as_lists(self) -> list[list[list[int]]]:
        """File encoding: each point a list of c coefficient lists."""
        return np.moveaxis(self.points, 0, 2).tolist()
