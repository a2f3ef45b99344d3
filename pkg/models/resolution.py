"""Projective covers, syzygies and minimal free resolutions.

A is local, so every projective module is free; a free module A^t uses the
basis b_s e_j at index j * a^c + s.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import comb
from typing import Optional, Sequence

import numpy as np

from models import linalg
from models.algebra import AlgebraSpec, AlgElement
from models.base import InputError
from models.module import ModuleRep, zero_module

logger = logging.getLogger(__name__)


class TooShort(InputError):
    pass


@dataclass
class ProjectiveCover:
    rank: int
    epi: np.ndarray
    generators: list[int]


def projective_cover(module: ModuleRep) -> ProjectiveCover:
    """Free cover A^t -> M; generator j goes to the j-th basis vector completing rad M."""
    field, algebra = module.field, module.algebra
    if module.d == 0:
        return ProjectiveCover(0, field.zeros(0, 0), [])
    gens = linalg.complement_columns(field, module.radical_basis, module.d)
    stack = module.monomial_stack
    blocks = [linalg.transpose(stack[:, :, :, g]) for g in gens]
    epi = np.concatenate(blocks, axis=2) if blocks else field.zeros(module.d, 0)
    return ProjectiveCover(len(gens), epi, gens)


def free_action(algebra: AlgebraSpec, rank: int) -> np.ndarray:
    """Action matrices of A^rank, shape (e, c, rank*a^c, rank*a^c)."""
    field = algebra.field
    eye = field.identity(rank)
    mats = [linalg.kron(field, eye, algebra.left_matrix(algebra.generator(i))) for i in range(algebra.c)]
    return np.stack(mats, axis=1)


@dataclass
class Syzygy:
    module: ModuleRep
    cover: ProjectiveCover
    inclusion: np.ndarray


def syzygy_with_cover(module: ModuleRep) -> Syzygy:
    field, algebra = module.field, module.algebra
    cover = projective_cover(module)
    if cover.rank == 0:
        return Syzygy(zero_module(algebra), cover, field.zeros(0, 0))
    inclusion, free = linalg.kernel(field, cover.epi)
    if not free:
        return Syzygy(zero_module(algebra), cover, inclusion)
    action = free_action(algebra, cover.rank)
    restricted = field.matmul(action, inclusion[:, None])[:, :, free, :]
    return Syzygy(ModuleRep(algebra, restricted), cover, inclusion)


def syzygy(module: ModuleRep) -> ModuleRep:
    return syzygy_with_cover(module).module


@dataclass
class Resolution:
    module: ModuleRep
    betti: list[int]
    # entries[n-1] has shape (e, b_{n-1}, b_n, a^c): d_n sends e_j to sum_i entries[i, j] e_i
    entries: list[np.ndarray]
    expanded: list[np.ndarray]
    augmentation: np.ndarray
    syzygies: list[ModuleRep] = dataclass_field(default_factory=list)

    @property
    def algebra(self) -> AlgebraSpec:
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    def entry(self, n: int, i: int, j: int) -> AlgElement:
        return self.algebra.element(self.entries[n - 1][:, i, j, :])

    def differential(self, n: int) -> list[list[AlgElement]]:
        b_prev, b_n = self.entries[n - 1].shape[1:3]
        return [[self.entry(n, i, j) for j in range(b_n)] for i in range(b_prev)]

    def verify(self) -> list[str]:
        """Composition, minimality and exactness violations."""
        field, dim = self.module.field, self.algebra.dim
        problems = []
        if linalg.rank(field, self.augmentation) != self.module.d:
            problems.append("augmentation is not surjective")
        maps = [self.augmentation] + self.expanded
        for n in range(1, len(maps)):
            if self.entries[n - 1][:, :, :, 0].any():
                problems.append(f"d_{n} has an entry outside the radical")
            if not linalg.is_zero(field.matmul(maps[n - 1], maps[n])):
                problems.append(f"d_{n - 1} d_{n} != 0" if n > 1 else "augmentation d_1 != 0")
        for n in range(len(maps) - 1):
            # exactness at F_n
            size = self.betti[n] * dim
            if linalg.rank(field, maps[n]) + linalg.rank(field, maps[n + 1]) != size:
                problems.append(f"resolution is not exact at degree {n}")
        return problems


def minimal_resolution(module: ModuleRep, steps: int) -> Resolution:
    """Minimal free resolution F_steps -> ... -> F_0 -> M."""
    if steps < 0:
        raise InputError(f"resolution length must be >= 0, got {steps}")
    field, algebra = module.field, module.algebra
    dim = algebra.dim
    current = syzygy_with_cover(module)
    betti = [current.cover.rank]
    entries, expanded = [], []
    syzygies = [module]
    augmentation = current.cover.epi
    for n in range(1, steps + 1):
        nxt = syzygy_with_cover(current.module)
        b_prev, b_n = betti[-1], nxt.cover.rank
        if b_n:
            diff = field.matmul(current.inclusion, nxt.cover.epi)
        else:
            diff = field.zeros(b_prev * dim, 0)
        blocks = diff.reshape(field.e, b_prev, dim, b_n, dim)[..., 0]
        entries.append(np.moveaxis(blocks, 2, 3))
        expanded.append(diff)
        betti.append(b_n)
        syzygies.append(current.module)
        logger.debug(f"Resolution step {n}: b_{n} = {b_n}, syzygy dimension {current.module.d}")
        current = nxt
    logger.info(f"Resolved module of dimension {module.d} to length {steps}: betti {betti}")
    return Resolution(module, betti, entries, expanded, augmentation, syzygies)


def _vanishing_order(values: np.ndarray, step: int) -> Optional[int]:
    """Fewest step-differences that make the sequence vanish, when at least two zeros show it."""
    current = values
    for order in range(len(values)):
        if current.size < 2:
            return None
        if not current.any():
            return order
        current = current[step:] - current[:-step]
    return None


def complexity_estimate(betti: Sequence[int]) -> int:
    """Polynomial growth rate of the Betti numbers.

    Betti numbers are eventually quasi-polynomial of period at most 2, so the
    complexity is the number of differences (step 1, else step 2) that
    annihilate the tail. Index shifts do not change the count.
    """
    if len(betti) < 8:
        raise TooShort(f"complexity needs at least 8 Betti numbers, got {len(betti)}")
    for start in sorted({1, len(betti) // 4, len(betti) // 2}):
        tail = np.array(betti[start:], dtype=np.int64)
        for step in (1, 2):
            order = _vanishing_order(tail, step)
            if order is not None:
                return order
    start = len(betti) // 2
    tail = np.array(betti[start:], dtype=float)
    ns = np.arange(start, len(betti), dtype=float)
    logger.warning(f"Betti tail {betti[start:]} is not visibly quasi-polynomial; fitting its growth")
    positive = tail > 0
    if positive.sum() < 2 or np.ptp(tail) == 0:
        return 1
    slope = np.polyfit(np.log(ns[positive]), np.log(tail[positive]), 1)[0]
    return max(1, int(round(slope)) + 1)


def betti_oracle(c: int, a: int, n: int) -> int:
    """Degree-n dimension of Ext(k, k) read off its presentation."""
    if n < 0:
        return 0
    if a == 2:
        return comb(n + c - 1, c - 1)
    total = 0
    for s in range(min(c, n) + 1):
        if (n - s) % 2 == 0:
            total += comb(c, s) * comb((n - s) // 2 + c - 1, c - 1)
    return total
