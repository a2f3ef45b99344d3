"""Gaussian elimination over a Field on coefficient-plane matrices.

Matrices have shape (e, rows, cols); see models.field for the encoding.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from models.base import InconsistentSystem
from models.field import Field


@dataclass
class Echelon:
    matrix: np.ndarray
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def transpose(x: np.ndarray) -> np.ndarray:
    return np.swapaxes(x, 1, 2)


def rref(field: Field, a: np.ndarray) -> Echelon:
    """Reduced row echelon form; pivot search takes the first nonzero row."""
    r = np.array(a, dtype=np.int64) % field.p
    _, m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        below = np.flatnonzero(field.nonzero(r[:, row:, col]))
        if below.size == 0:
            continue
        piv = row + int(below[0])
        if piv != row:
            r[:, [row, piv]] = r[:, [piv, row]]
        inv = field.inv(r[:, row, col])
        r[:, row, col:] = field.mul(inv[:, None], r[:, row, col:])
        column = r[:, :, col].copy()
        column[:, row] = 0
        hit = np.flatnonzero(field.nonzero(column))
        if hit.size:
            update = field.mul(column[:, hit, None], r[:, row, None, col:])
            r[:, hit, col:] = field.sub(r[:, hit, col:], update)
        pivots.append(col)
        row += 1
    return Echelon(r, pivots)


def rank(field: Field, a: np.ndarray) -> int:
    a = np.asarray(a)
    if 0 in a.shape[1:]:
        return 0
    return rref(field, a).rank


def kernel(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Basis of {x : a x = 0} as columns, one per free variable, and the free columns.

    The basis vector of free column f has a 1 at f, zeros at the other free
    columns, and minus the rref entries at the pivot columns; so a kernel
    vector's coordinates in this basis are its entries at the free rows.
    """
    a = np.asarray(a, dtype=np.int64)
    _, m, n = a.shape
    if m == 0:
        return field.identity(n), list(range(n))
    ech = rref(field, a)
    pivots = ech.pivots
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = field.zeros(n, len(free))
    if not free:
        return basis, free
    if pivots:
        block = ech.matrix[:, : len(pivots)][:, :, free]
        basis[:, pivots, :] = field.neg(block)
    basis[0, free, np.arange(len(free))] = 1
    return basis, free


def nullspace(field: Field, a: np.ndarray) -> np.ndarray:
    return kernel(field, a)[0]


def complement_columns(field: Field, span: np.ndarray, n: int) -> list[int]:
    """Standard basis indices completing the column span of `span` in F^n."""
    span = np.asarray(span, dtype=np.int64)
    if span.shape[-1] == 0:
        return list(range(n))
    pivots = set(rref(field, transpose(span)).pivots)
    return [j for j in range(n) if j not in pivots]


def column_basis(field: Field, vectors: np.ndarray) -> np.ndarray:
    """A basis of the column span, as the nonzero rows of rref of the transpose."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[-1] == 0:
        return vectors
    ech = rref(field, transpose(vectors))
    return transpose(ech.matrix[:, : ech.rank])


class Solver:
    """Reusable solver for a x = b with a fixed coefficient matrix a."""

    def __init__(self, field: Field, a: np.ndarray):
        a = np.asarray(a, dtype=np.int64) % field.p
        _, m, n = a.shape
        self.field = field
        self.shape = (m, n)
        ech = rref(field, np.concatenate([a, field.identity(m)], axis=2))
        self.pivots = [c for c in ech.pivots if c < n]
        self.rank = len(self.pivots)
        self.reduced = ech.matrix[:, : self.rank, :n]
        self.transform = ech.matrix[:, :, n:]

    def consistent(self, b: np.ndarray) -> bool:
        y = self.field.matmul(self.transform, self._columns(b))
        return not y[:, self.rank :].any()

    def _columns(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=np.int64)
        return b[:, :, None] if b.ndim == 2 else b

    def solve(self, b: np.ndarray) -> np.ndarray:
        """One particular solution (free variables zero); raises if none exists."""
        flat = np.asarray(b).ndim == 2
        rhs = self._columns(b)
        y = self.field.matmul(self.transform, rhs)
        if y[:, self.rank :].any():
            raise InconsistentSystem(f"system of shape {self.shape} has no solution")
        x = self.field.zeros(self.shape[1], rhs.shape[2])
        x[:, self.pivots, :] = y[:, : self.rank, :]
        return x[:, :, 0] if flat else x

    def nullspace(self) -> np.ndarray:
        n = self.shape[1]
        free = [j for j in range(n) if j not in set(self.pivots)]
        basis = self.field.zeros(n, len(free))
        if free:
            if self.pivots:
                basis[:, self.pivots, :] = self.field.neg(self.reduced[:, :, free])
            basis[0, free, np.arange(len(free))] = 1
        return basis


def solve(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return Solver(field, a).solve(b)


def inverse(field: Field, a: np.ndarray) -> np.ndarray:
    n = a.shape[1]
    solver = Solver(field, a)
    if solver.rank != n or a.shape[2] != n:
        raise InconsistentSystem("matrix is not invertible")
    return solver.solve(field.identity(n))


def batch_invertible(field: Field, mats: np.ndarray) -> np.ndarray:
    """Invertibility of every square matrix in a batch of shape (e, B, n, n)."""
    r = np.array(mats, dtype=np.int64) % field.p
    _, batch, n, _ = r.shape
    ok = np.ones(batch, dtype=bool)
    rows = np.arange(batch)
    for col in range(n):
        nz = field.nonzero(r[:, :, col:, col])
        ok &= nz.any(axis=1)
        piv = col + np.argmax(nz, axis=1)
        swapped = r[:, rows, piv].copy()
        r[:, rows, piv] = r[:, rows, col]
        r[:, rows, col] = swapped
        lead = r[:, :, col, col].copy()
        lead[:, ~ok] = 0
        lead[0, ~ok] = 1
        inv = field.inv(lead)
        r[:, :, col, :] = field.mul(inv[:, :, None], r[:, :, col, :])
        factor = r[:, :, :, col].copy()
        factor[:, :, col] = 0
        r = field.sub(r, field.mul(factor[:, :, :, None], r[:, :, None, col, :]))
    return ok


def kron(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    e, m, n = a.shape
    _, r, s = b.shape
    out = field.mul(a[:, :, None, :, None], b[:, None, :, None, :])
    return out.reshape(e, m * r, n * s)


def block_diag(field: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[1] for b in blocks)
    cols = sum(b.shape[2] for b in blocks)
    out = field.zeros(rows, cols)
    i = j = 0
    for b in blocks:
        out[:, i : i + b.shape[1], j : j + b.shape[2]] = b
        i += b.shape[1]
        j += b.shape[2]
    return out


def is_zero(x: np.ndarray) -> bool:
    return not np.asarray(x).any()
