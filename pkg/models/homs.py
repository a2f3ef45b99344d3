import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from models import linalg
from models.base import AlgebraMismatch
from models.module import ModuleRep, regular_module
from models.resolution import Resolution, minimal_resolution, projective_cover

logger = logging.getLogger(__name__)

# Hom spaces with at most this many elements are searched exhaustively
EXHAUSTIVE_LIMIT = 2 ** 16
RANDOM_TRIALS = 1000
BATCH = 4096


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass
class HomSpace:
    source: ModuleRep
    target: ModuleRep
    # shape (e, dim, d_target, d_source)
    basis: np.ndarray
    stable_dim: Optional[int] = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def combination(self, coeffs: np.ndarray) -> np.ndarray:
        """Maps sum_k coeffs[:, b, k] basis[k] for a batch of coefficient rows (e, B, dim)."""
        field = self.source.field
        flat = self.basis.reshape(field.e, self.dim, -1)
        out = field.matmul(coeffs, flat)
        return out.reshape(field.e, coeffs.shape[1], self.target.d, self.source.d)


def _check_same_algebra(source: ModuleRep, target: ModuleRep):
    if source.algebra != target.algebra:
        raise AlgebraMismatch(f"modules over {source.algebra} and {target.algebra}")


def hom_basis(source: ModuleRep, target: ModuleRep) -> HomSpace:
    """Basis of the maps f with f X_i = Y_i f, refined one generator at a time."""
    _check_same_algebra(source, target)
    field = source.field
    m, n = source.d, target.d
    basis = field.identity(n * m)
    eye_m, eye_n = field.identity(m), field.identity(n)
    for i in range(source.algebra.c):
        if basis.shape[2] == 0:
            break
        # row-major vec(f): vec(f X) = (I kron X^T) vec f, vec(Y f) = (Y kron I) vec f
        system = field.sub(
            linalg.kron(field, eye_n, linalg.transpose(source.X(i))),
            linalg.kron(field, target.X(i), eye_m),
        )
        reduced = field.matmul(system, basis)
        basis = field.matmul(basis, linalg.nullspace(field, reduced))
    maps = np.moveaxis(basis, 2, 1).reshape(field.e, basis.shape[2], n, m)
    return HomSpace(source, target, maps)


def stable_hom_dim(source: ModuleRep, target: ModuleRep) -> int:
    """dim Hom(M, N) minus the maps factoring through the projective cover of N."""
    _check_same_algebra(source, target)
    field = source.field
    homs = hom_basis(source, target)
    if homs.dim == 0:
        return 0
    cover = projective_cover(target)
    to_free = hom_basis(source, regular_module(source.algebra))
    if cover.rank == 0 or to_free.dim == 0:
        return homs.dim
    dim = source.algebra.dim
    projective = []
    for j in range(cover.rank):
        block = cover.epi[:, :, j * dim:(j + 1) * dim]
        composed = field.matmul(block[:, None], to_free.basis)
        projective.append(composed.reshape(field.e, to_free.dim, -1))
    span = linalg.transpose(np.concatenate(projective, axis=1))
    through = linalg.rank(field, span)
    logger.debug(f"Hom dim {homs.dim}, {through} through projectives")
    return homs.dim - through


def hom_space(source: ModuleRep, target: ModuleRep) -> HomSpace:
    space = hom_basis(source, target)
    space.stable_dim = stable_hom_dim(source, target)
    return space


def _has_invertible(space: HomSpace, coeffs: np.ndarray) -> bool:
    field = space.source.field
    for start in range(0, coeffs.shape[1], BATCH):
        maps = space.combination(coeffs[:, start:start + BATCH])
        if linalg.batch_invertible(field, maps).any():
            return True
    return False


def is_isomorphic(source: ModuleRep, target: ModuleRep, seed: int = 0) -> Verdict:
    """Search Hom(M, N) for an invertible map; a failed random search is inconclusive."""
    _check_same_algebra(source, target)
    if source.d != target.d:
        return Verdict.NO
    if source.d == 0:
        return Verdict.YES
    if minimal_resolution(source, 3).betti != minimal_resolution(target, 3).betti:
        return Verdict.NO
    space = hom_basis(source, target)
    if space.dim == 0:
        return Verdict.NO
    field = source.field
    rng = np.random.default_rng(seed)
    if _has_invertible(space, field.random(rng, RANDOM_TRIALS, space.dim)):
        return Verdict.YES
    if field.order ** space.dim <= EXHAUSTIVE_LIMIT:
        indices = np.arange(field.order ** space.dim)
        digits = np.stack([(indices // field.order ** k) % field.order for k in range(space.dim)], axis=1)
        if _has_invertible(space, field.decode(digits)):
            return Verdict.YES
        return Verdict.NO
    logger.warning(f"Isomorphism search inconclusive for modules of dimension {source.d}")
    return Verdict.INCONCLUSIVE


def period_of(module: ModuleRep, bound: int = 12, resolution: Optional[Resolution] = None,
              seed: int = 0) -> tuple[Verdict, Optional[int]]:
    """Smallest n <= bound with Omega^n(M) isomorphic to M.

    Candidates whose Betti numbers do not repeat with period n are skipped
    before any isomorphism search.
    """
    if resolution is None or resolution.length < bound:
        resolution = minimal_resolution(module, bound + 3)
    betti = resolution.betti
    undecided = False
    for n in range(1, bound + 1):
        current = resolution.syzygies[n]
        if current.d == 0:
            return Verdict.NO, None
        if current.d != module.d:
            continue
        if any(betti[j + n] != betti[j] for j in range(len(betti) - n)):
            continue
        verdict = is_isomorphic(current, module, seed=seed)
        if verdict == Verdict.YES:
            return Verdict.YES, n
        undecided |= verdict == Verdict.INCONCLUSIVE
    return (Verdict.INCONCLUSIVE if undecided else Verdict.NO), None
