"""The quantum complete intersection A = k<x_1..x_c>/(x_i^a, x_i x_j - q x_j x_i).

Elements are coefficient vectors over the PBW monomials x_1^{e_1}...x_c^{e_c},
0 <= e_i < a, ordered lexicographically with x_1 varying slowest.
"""

import logging
from functools import cached_property
from itertools import product
from typing import Sequence, Union

import numpy as np

from models.base import InputError
from models.field import Field, FieldElement, FieldExtension, compute_a_prime, element_order

logger = logging.getLogger(__name__)


class WrongRootOrder(InputError):
    pass


class ZeroElement(InputError):
    pass


class AlgebraSpec:
    def __init__(self, field: Field, a: int, c: int, q: Union[FieldElement, int, Sequence[int]]):
        if c < 1:
            raise InputError(f"generator count c must be >= 1, got {c}")
        self.unity = compute_a_prime(a, field.p)
        q = field.element(q)
        if q.is_zero() or element_order(field, q) != self.unity.a_prime:
            raise WrongRootOrder(
                f"q = {q} must have multiplicative order a' = {self.unity.a_prime} in F_{field.order}"
            )
        self.field = field
        self.a = a
        self.c = c
        self.q = q
        self.dim = a ** c

    def __repr__(self):
        return f"AlgebraSpec(p={self.field.p}, e={self.field.e}, a={self.a}, c={self.c}, q={self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraSpec)
            and (self.field, self.a, self.c, self.q) == (other.field, other.a, other.c, other.q)
        )

    def __hash__(self):
        return hash((self.field, self.a, self.c, self.q))

    # basis

    @cached_property
    def exponents(self) -> np.ndarray:
        return np.array(list(product(range(self.a), repeat=self.c)), dtype=np.int64).reshape(self.dim, self.c)

    def index_of(self, exps: Sequence[int]) -> int:
        idx = 0
        for x in exps:
            if not 0 <= x < self.a:
                raise InputError(f"exponent tuple {list(exps)} is outside the PBW basis")
            idx = idx * self.a + int(x)
        return idx

    def label(self, index: int) -> str:
        parts = []
        for i, x in enumerate(self.exponents[index]):
            if x == 1:
                parts.append(f"x{i + 1}")
            elif x > 1:
                parts.append(f"x{i + 1}^{x}")
        return "*".join(parts) or "1"

    @property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.dim)]

    @property
    def socle_index(self) -> int:
        return self.dim - 1

    # structure constants

    @cached_property
    def _q_powers(self) -> np.ndarray:
        n = self.unity.a_prime
        out = self.field.zeros(n)
        acc = self.field.element(1)
        for k in range(n):
            out[:, k] = acc.array
            acc = acc * self.q
        return out

    @cached_property
    def prod_index(self) -> np.ndarray:
        """prod_index[s, t] is the monomial of b_s * b_t, or -1 when it vanishes."""
        ex = self.exponents
        total = ex[:, None, :] + ex[None, :, :]
        weights = self.a ** np.arange(self.c - 1, -1, -1, dtype=np.int64)
        idx = total @ weights
        idx[np.any(total >= self.a, axis=2)] = -1
        return idx

    @cached_property
    def prod_pow(self) -> np.ndarray:
        """Power of q in b_s * b_t: minus the sum over i < j of e_j f_i, mod a'."""
        ex = self.exponents
        upper = np.triu(np.ones((self.c, self.c), dtype=np.int64), k=1)
        # swaps[s, t] = sum_{i<j} ex[s, j] * ex[t, i]
        swaps = np.einsum("sj,ij,ti->st", ex, upper, ex)
        return (-swaps) % self.unity.a_prime

    @cached_property
    def prod_coef(self) -> np.ndarray:
        coef = self._q_powers[:, self.prod_pow]
        coef[:, self.prod_index < 0] = 0
        return coef

    def left_matrix(self, u: "AlgElement") -> np.ndarray:
        """Matrix of v -> u v; column t is u * b_t."""
        coeffs = self.element(u).coeffs
        support = np.flatnonzero(self.field.nonzero(coeffs))
        out = self.field.zeros(self.dim, self.dim)
        if support.size == 0:
            return out
        idx = self.prod_index[support]
        ss, tt = np.nonzero(idx >= 0)
        vals = self.field.mul(coeffs[:, support[ss]], self.prod_coef[:, support[ss], tt])
        for k in range(self.field.e):
            np.add.at(out[k], (idx[ss, tt], tt), vals[k])
        return out % self.field.p

    def right_matrix(self, v: "AlgElement") -> np.ndarray:
        """Matrix of u -> u v; column s is b_s * v."""
        coeffs = self.element(v).coeffs
        support = np.flatnonzero(self.field.nonzero(coeffs))
        out = self.field.zeros(self.dim, self.dim)
        if support.size == 0:
            return out
        idx = self.prod_index[:, support]
        ss, tt = np.nonzero(idx >= 0)
        vals = self.field.mul(coeffs[:, support[tt]], self.prod_coef[:, ss, support[tt]])
        for k in range(self.field.e):
            np.add.at(out[k], (idx[ss, tt], ss), vals[k])
        return out % self.field.p

    @cached_property
    def monomial_left(self) -> np.ndarray:
        """Left multiplication matrices of every basis monomial, shape (e, dim, dim, dim)."""
        return np.stack([self.left_matrix(self.basis_element(s)) for s in range(self.dim)], axis=1)

    # elements

    def element(self, value) -> "AlgElement":
        if isinstance(value, AlgElement):
            if value.algebra != self:
                raise InputError("element belongs to a different algebra")
            return value
        if isinstance(value, np.ndarray):
            arr = value.astype(np.int64)
        else:
            # file encoding: one coefficient list per basis monomial
            arr = np.asarray(value, dtype=np.int64)
            arr = arr[None] if arr.ndim == 1 and self.field.e == 1 else arr.T
        if arr.shape != (self.field.e, self.dim):
            raise InputError(f"algebra element needs {self.dim} coefficients, got shape {arr.shape}")
        return AlgElement(self, arr)

    def from_field_elements(self, coeffs: Sequence) -> "AlgElement":
        if len(coeffs) != self.dim:
            raise InputError(f"algebra element needs {self.dim} coefficients, got {len(coeffs)}")
        return AlgElement(self, self.field.stack(coeffs))

    def zero(self) -> "AlgElement":
        return AlgElement(self, self.field.zeros(self.dim))

    def basis_element(self, index: int) -> "AlgElement":
        arr = self.field.zeros(self.dim)
        arr[0, index] = 1
        return AlgElement(self, arr)

    def one(self) -> "AlgElement":
        return self.basis_element(0)

    def monomial(self, exps: Sequence[int], coeff=1) -> "AlgElement":
        if any(x >= self.a for x in exps):
            return self.zero()
        arr = self.field.zeros(self.dim)
        arr[:, self.index_of(exps)] = self.field.element(coeff).array
        return AlgElement(self, arr)

    def generator(self, i: int) -> "AlgElement":
        """x_{i+1} (0-based index)."""
        exps = [0] * self.c
        exps[i] = 1
        return self.monomial(exps)

    def socle_element(self) -> "AlgElement":
        return self.basis_element(self.socle_index)

    def augmentation(self, u: "AlgElement") -> FieldElement:
        return FieldElement(self.field, self.element(u).coeffs[:, 0])

    def extend(self, ext: FieldExtension) -> "AlgebraSpec":
        if ext.base != self.field:
            raise InputError(f"extension of {ext.base} cannot lift an algebra over {self.field}")
        if ext.field == self.field:
            return self
        return AlgebraSpec(ext.field, self.a, self.c, ext.embed_element(self.q))


class AlgElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: AlgebraSpec, coeffs: np.ndarray):
        object.__setattr__(self, "algebra", algebra)
        arr = np.array(coeffs, dtype=np.int64) % algebra.field.p
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("AlgElement is immutable")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def in_radical(self) -> bool:
        return not self.coeffs[:, 0].any()

    def __add__(self, other):
        other = self.algebra.element(other)
        return AlgElement(self.algebra, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = self.algebra.element(other)
        return AlgElement(self.algebra, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return AlgElement(self.algebra, self.field.neg(self.coeffs))

    def scale(self, s) -> "AlgElement":
        s = self.field.element(s)
        return AlgElement(self.algebra, self.field.mul(s.array[:, None], self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self.algebra, self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, AlgElement)
            and other.algebra == self.algebra
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __hash__(self):
        return hash((self.algebra, self.coeffs.tobytes()))

    def __repr__(self):
        terms = []
        for idx in np.flatnonzero(self.field.nonzero(self.coeffs)):
            coef = FieldElement(self.field, self.coeffs[:, idx])
            label = self.algebra.label(idx)
            if label == "1":
                terms.append(repr(coef))
            else:
                terms.append(label if coef == 1 else f"{coef!r}*{label}")
        return " + ".join(terms) or "0"

    def to_json(self) -> list[list[int]]:
        return self.coeffs.T.tolist()


def make_algebra(field: Field, a: int, c: int, q) -> AlgebraSpec:
    algebra = AlgebraSpec(field, a, c, q)
    logger.debug(f"Built {algebra}: dimension {algebra.dim}")
    return algebra


def multiply(algebra: AlgebraSpec, u: AlgElement, v: AlgElement) -> AlgElement:
    u = algebra.element(u)
    v = algebra.element(v)
    out = algebra.field.matmul(algebra.left_matrix(u), v.coeffs[:, :, None])[:, :, 0]
    return AlgElement(algebra, out)


def u_lambda(algebra: AlgebraSpec, lam: Sequence) -> AlgElement:
    """The linear form lambda_1 x_1 + ... + lambda_c x_c."""
    if len(lam) != algebra.c:
        raise InputError(f"point needs {algebra.c} coordinates, got {len(lam)}")
    out = algebra.zero()
    for i, value in enumerate(lam):
        out = out + algebra.generator(i).scale(value)
    return out
