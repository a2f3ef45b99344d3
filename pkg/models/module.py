"""Finite-dimensional left A-modules given by the action matrices of x_1..x_c.

Column-vector convention: x_i acts as v -> X_i v, so the algebra relations
read X_i^a = 0 and X_i X_j = q X_j X_i for i < j.
"""

import logging
from functools import cached_property
from typing import Optional

import numpy as np

from models import linalg
from models.algebra import AlgebraSpec, AlgElement, ZeroElement
from models.base import AlgebraMismatch, InconsistentSystem, InputError
from models.field import Field, FieldExtension

logger = logging.getLogger(__name__)


class ValidationError(InputError):
    """A module whose matrices violate the algebra relations."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class NotASubmodule(InputError):
    pass


class ModuleRep:
    def __init__(self, algebra: AlgebraSpec, matrices: np.ndarray):
        matrices = np.array(matrices, dtype=np.int64) % algebra.field.p
        if matrices.ndim != 4 or matrices.shape[:2] != (algebra.field.e, algebra.c):
            raise InputError(
                f"expected {algebra.c} action matrices in {algebra.field.e} planes, got shape {matrices.shape}"
            )
        if matrices.shape[2] != matrices.shape[3]:
            raise InputError(f"action matrices must be square, got {matrices.shape[2]}x{matrices.shape[3]}")
        matrices.setflags(write=False)
        self.algebra = algebra
        self.matrices = matrices
        self.d = matrices.shape[2]
        self._monomials: dict[int, np.ndarray] = {}

    def __repr__(self):
        return f"ModuleRep(d={self.d}, {self.algebra})"

    @property
    def field(self) -> Field:
        return self.algebra.field

    def X(self, i: int) -> np.ndarray:
        return self.matrices[:, i]

    def monomial_matrix(self, index: int) -> np.ndarray:
        """Action of the PBW monomial with the given basis index."""
        if index not in self._monomials:
            exps = self.algebra.exponents[index]
            out = self.field.identity(self.d)
            for i in range(self.algebra.c - 1, -1, -1):
                for _ in range(exps[i]):
                    out = self.field.matmul(self.X(i), out)
            self._monomials[index] = out
        return self._monomials[index]

    @cached_property
    def monomial_stack(self) -> np.ndarray:
        """All monomial actions, shape (e, a^c, d, d)."""
        return np.stack([self.monomial_matrix(s) for s in range(self.algebra.dim)], axis=1)

    def orbit(self, vectors: np.ndarray) -> np.ndarray:
        """Columns b_s v for every basis monomial b_s and every column v."""
        if vectors.shape[2] == 0:
            return vectors
        images = self.field.matmul(self.monomial_stack, vectors[:, None])
        return np.concatenate(list(np.moveaxis(images, 1, 0)), axis=2)

    def generated_subspace(self, vectors: np.ndarray) -> np.ndarray:
        return linalg.column_basis(self.field, self.orbit(vectors))

    @cached_property
    def radical_basis(self) -> np.ndarray:
        """Basis of rad M = sum of the images of the X_i."""
        if self.d == 0:
            return self.field.zeros(0, 0)
        stacked = np.concatenate([self.X(i) for i in range(self.algebra.c)], axis=2)
        return linalg.column_basis(self.field, stacked)

    def top_dimension(self) -> int:
        return self.d - self.radical_basis.shape[2]


def validate_module(module: ModuleRep) -> list[str]:
    """Every violated relation, empty iff the matrices define an A-module."""
    field, algebra = module.field, module.algebra
    violations = []
    for i in range(algebra.c):
        if not linalg.is_zero(_matrix_power(field, module.X(i), algebra.a)):
            violations.append(f"X{i + 1}^{algebra.a} != 0")
    q = algebra.q.array
    for i in range(algebra.c):
        for j in range(i + 1, algebra.c):
            lhs = field.matmul(module.X(i), module.X(j))
            rhs = field.mul(q[:, None, None], field.matmul(module.X(j), module.X(i)))
            if not np.array_equal(lhs, rhs):
                violations.append(f"X{i + 1} X{j + 1} != q X{j + 1} X{i + 1}")
    return violations


def _matrix_power(field: Field, x: np.ndarray, n: int) -> np.ndarray:
    out = field.identity(x.shape[1])
    for _ in range(n):
        out = field.matmul(x, out)
    return out


def make_module(algebra: AlgebraSpec, matrices: np.ndarray, check: bool = True) -> ModuleRep:
    module = ModuleRep(algebra, matrices)
    if check:
        violations = validate_module(module)
        if violations:
            raise ValidationError(violations)
    return module


def regular_module(algebra: AlgebraSpec) -> ModuleRep:
    mats = np.stack([algebra.left_matrix(algebra.generator(i)) for i in range(algebra.c)], axis=1)
    return ModuleRep(algebra, mats)


def simple_module(algebra: AlgebraSpec) -> ModuleRep:
    return ModuleRep(algebra, algebra.field.zeros(algebra.c, 1, 1))


def zero_module(algebra: AlgebraSpec) -> ModuleRep:
    return ModuleRep(algebra, algebra.field.zeros(algebra.c, 0, 0))


def direct_sum(first: ModuleRep, second: ModuleRep) -> ModuleRep:
    if first.algebra != second.algebra:
        raise AlgebraMismatch(f"cannot add modules over {first.algebra} and {second.algebra}")
    field = first.field
    mats = np.stack(
        [linalg.block_diag(field, [first.X(i), second.X(i)]) for i in range(first.algebra.c)], axis=1
    )
    return ModuleRep(first.algebra, mats)


def free_module(algebra: AlgebraSpec, rank: int) -> ModuleRep:
    out = zero_module(algebra)
    regular = regular_module(algebra)
    for _ in range(rank):
        out = direct_sum(out, regular)
    return out


def action_matrix(module: ModuleRep, u: AlgElement) -> np.ndarray:
    """Matrix of m -> u m."""
    field, algebra = module.field, module.algebra
    u = algebra.element(u)
    out = field.zeros(module.d, module.d)
    for s in np.flatnonzero(field.nonzero(u.coeffs)):
        exps = algebra.exponents[s]
        if exps.sum() == 1:
            term = module.X(int(np.flatnonzero(exps)[0]))
        else:
            term = module.monomial_matrix(int(s))
        out = field.add(out, field.mul(u.coeffs[:, s, None, None], term))
    return out


def submodule(module: ModuleRep, basis: np.ndarray) -> ModuleRep:
    """Restriction of the action to the span of the (independent) basis columns."""
    field = module.field
    if basis.shape[2] == 0:
        return zero_module(module.algebra)
    solver = linalg.Solver(field, basis)
    if solver.rank != basis.shape[2]:
        raise NotASubmodule("submodule basis columns are linearly dependent")
    try:
        mats = [solver.solve(field.matmul(module.X(i), basis)) for i in range(module.algebra.c)]
    except InconsistentSystem as exc:
        raise NotASubmodule("subspace is not stable under the action") from exc
    return ModuleRep(module.algebra, np.stack(mats, axis=1))


def quotient_module(module: ModuleRep, span: np.ndarray) -> tuple[ModuleRep, np.ndarray]:
    """M / S for a submodule spanned by the columns of `span`, with the projection matrix."""
    field = module.field
    sub = linalg.column_basis(field, span)
    keep = linalg.complement_columns(field, sub, module.d)
    change = np.concatenate([sub, field.identity(module.d)[:, :, keep]], axis=2)
    coords = linalg.inverse(field, change)
    projection = coords[:, sub.shape[2]:, :]
    mats = []
    for i in range(module.algebra.c):
        moved = field.matmul(projection, field.matmul(module.X(i), sub))
        if not linalg.is_zero(moved):
            raise NotASubmodule("subspace is not stable under the action")
        mats.append(field.matmul(projection, module.X(i)[:, :, keep]))
    if not keep:
        return zero_module(module.algebra), projection
    return ModuleRep(module.algebra, np.stack(mats, axis=1)), projection


def left_ideal_module(algebra: AlgebraSpec, u: AlgElement) -> tuple[ModuleRep, np.ndarray]:
    """The left ideal A u with its inclusion into the regular module."""
    u = algebra.element(u)
    if u.is_zero():
        raise ZeroElement("left ideal generator must be nonzero")
    inclusion = linalg.column_basis(algebra.field, algebra.right_matrix(u))
    return submodule(regular_module(algebra), inclusion), inclusion


def cosyzygy_of_simple(algebra: AlgebraSpec) -> tuple[ModuleRep, np.ndarray]:
    """A modulo its socle line, with the quotient map A -> A/soc(A)."""
    socle = algebra.field.zeros(algebra.dim, 1)
    socle[0, algebra.socle_index, 0] = 1
    return quotient_module(regular_module(algebra), socle)


def extend(module: ModuleRep, ext: FieldExtension) -> ModuleRep:
    return ModuleRep(module.algebra.extend(ext), ext.embed(module.matrices))


def random_module(algebra: AlgebraSpec, rng: np.random.Generator, rank: Optional[int] = None,
                  generators: int = 1, kind: Optional[str] = None) -> ModuleRep:
    """A submodule or quotient of A^rank generated by random radical elements."""
    field = algebra.field
    rank = rank or int(rng.integers(1, 3))
    kind = kind or ("sub", "quotient")[int(rng.integers(0, 2))]
    free = free_module(algebra, rank)
    vectors = field.random(rng, free.d, generators)
    vectors[:, :: algebra.dim, :] = 0
    span = free.generated_subspace(vectors)
    if kind == "sub":
        module = submodule(free, span)
    elif kind == "quotient":
        module = quotient_module(free, span)[0]
    else:
        raise InputError(f"unknown random module kind {kind!r}")
    logger.debug(f"Random {kind} module of A^{rank}: dimension {module.d}")
    return module
