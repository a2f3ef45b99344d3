"""Exact arithmetic in finite fields F_{p^e}.

Elements are stored as integer coefficient planes: an array whose leading
axis has length e holds the coefficients of 1, t, ..., t^{e-1} of every entry
of a scalar, vector or matrix. All arithmetic is vectorized over the trailing
axes and every result is fully reduced modulo p and the modulus polynomial.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from models.base import InputError

logger = logging.getLogger(__name__)


class NonPrime(InputError):
    def __init__(self, p: int):
        super().__init__(f"characteristic {p} is not prime")
        self.p = p


class ReducibleModulus(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class NoSuchRoot(InputError):
    pass


class ExtensionUnavailable(InputError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    factors = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    return factors


def digits(index: int, p: int, length: int) -> list[int]:
    """Base-p digits of index, least significant first."""
    out = []
    for _ in range(length):
        index, r = divmod(index, p)
        out.append(r)
    return out


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    # den is monic; both constant term first
    rem = list(num)
    d = len(den) - 1
    for top in range(len(rem) - 1, d - 1, -1):
        c = rem[top] % p
        if c:
            for i in range(d + 1):
                rem[top - d + i] = (rem[top - d + i] - c * den[i]) % p
    return [r % p for r in rem[:d]]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial factorization by every monic polynomial of degree <= n/2."""
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_rem(modulus, list(low) + [1], p)):
                return False
    return True


def first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n, constant coefficient varying fastest."""
    for index in range(p ** n):
        candidate = digits(index, p, n) + [1]
        if n > 1 and candidate[0] == 0:
            continue
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise ExtensionUnavailable(f"no irreducible polynomial of degree {n} over F_{p}")


class Field:
    """The field F_p[t]/(modulus) with p^e elements."""

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NonPrime(p)
        modulus = tuple(int(m) for m in modulus)
        if e < 1 or len(modulus) != e + 1:
            raise DegreeMismatch(f"modulus {list(modulus)} does not have degree {e}")
        if any(m < 0 or m >= p for m in modulus):
            raise DegreeMismatch(f"modulus coefficients must lie in [0, {p})")
        if modulus[-1] != 1:
            raise DegreeMismatch(f"modulus {list(modulus)} is not monic")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.modulus = modulus
        self.order = p ** e

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    # construction helpers

    def zeros(self, *shape: int) -> np.ndarray:
        return np.zeros((self.e,) + tuple(shape), dtype=np.int64)

    def ones(self, *shape: int) -> np.ndarray:
        out = self.zeros(*shape)
        out[0] = 1
        return out

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        out[0] = np.eye(n, dtype=np.int64)
        return out

    def from_ints(self, values) -> np.ndarray:
        """Embed integers through the prime subfield."""
        values = np.asarray(values, dtype=np.int64) % self.p
        out = self.zeros(*values.shape)
        out[0] = values
        return out

    def decode(self, index) -> np.ndarray:
        index = np.asarray(index, dtype=np.int64)
        out = self.zeros(*index.shape)
        for k in range(self.e):
            index, out[k] = np.divmod(index, self.p)
        return out

    def encode(self, x: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.e, dtype=np.int64)
        return np.tensordot(weights, np.asarray(x, dtype=np.int64), axes=(0, 0))

    @cached_property
    def all_elements(self) -> np.ndarray:
        """Every element, in enumeration order, as planes of shape (e, order)."""
        return self.decode(np.arange(self.order))

    def element(self, value: Union[int, Sequence[int], "FieldElement", np.ndarray]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InputError(f"element {value} belongs to {value.field}, not {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.from_ints(int(value)))
        return FieldElement(self, np.asarray(value, dtype=np.int64).reshape(self.e))

    def stack(self, elements: Iterable["FieldElement"]) -> np.ndarray:
        items = [self.element(x).array for x in elements]
        if not items:
            return self.zeros(0)
        return np.stack(items, axis=1)

    def unstack(self, x: np.ndarray) -> list["FieldElement"]:
        return [FieldElement(self, x[:, i]) for i in range(x.shape[1])]

    def random(self, rng: np.random.Generator, *shape: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(self.e,) + tuple(shape), dtype=np.int64)

    # arithmetic

    def add(self, x, y) -> np.ndarray:
        return (np.asarray(x) + np.asarray(y)) % self.p

    def sub(self, x, y) -> np.ndarray:
        return (np.asarray(x) - np.asarray(y)) % self.p

    def neg(self, x) -> np.ndarray:
        return (-np.asarray(x)) % self.p

    def _reduce(self, acc: np.ndarray) -> np.ndarray:
        e, p = self.e, self.p
        for top in range(2 * e - 2, e - 1, -1):
            lead = acc[top]
            if not lead.any():
                continue
            for i in range(e):
                if self.modulus[i]:
                    acc[top - e + i] = (acc[top - e + i] - self.modulus[i] * lead) % p
        return acc[:e] % p

    def mul(self, x, y) -> np.ndarray:
        """Elementwise product with numpy broadcasting on the trailing axes."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return (x * y) % self.p
        shape = np.broadcast_shapes(x.shape[1:], y.shape[1:])
        acc = np.zeros((2 * self.e - 1,) + shape, dtype=np.int64)
        for k in range(self.e):
            if not x[k].any():
                continue
            for l in range(self.e):
                acc[k + l] = (acc[k + l] + x[k] * y[l]) % self.p
        return self._reduce(acc)

    def matmul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return np.matmul(x[0], y[0])[None] % self.p
        first = np.matmul(x[0], y[0])
        acc = np.zeros((2 * self.e - 1,) + first.shape, dtype=np.int64)
        for k in range(self.e):
            if not x[k].any():
                continue
            for l in range(self.e):
                acc[k + l] = (acc[k + l] + np.matmul(x[k], y[l]) % self.p) % self.p
        return self._reduce(acc)

    def power(self, x, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if n < 0:
            return self.power(self.inv(x), -n)
        result = np.zeros_like(x)
        result[0] = 1
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def inv(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if not self.nonzero(x).all():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.power(x, self.order - 2)

    def nonzero(self, x) -> np.ndarray:
        return np.any(np.asarray(x) != 0, axis=0)

    def is_one(self, x) -> np.ndarray:
        x = np.asarray(x)
        return (x[0] == 1) & ~np.any(x[1:] != 0, axis=0)

    # extensions

    def embedding_into(self, other: "Field") -> np.ndarray:
        """Matrix sending coefficient planes of self into planes of other."""
        if other.p != self.p or other.e % self.e:
            raise InputError(f"{self} does not embed into {other}")
        matrix = np.zeros((other.e, self.e), dtype=np.int64)
        if self.e == 1:
            matrix[0, 0] = 1
            return matrix
        elems = other.all_elements
        value = other.ones(other.order)
        for coef in reversed(self.modulus[:-1]):
            value = other.add(other.mul(value, elems), other.from_ints(coef)[:, None])
        roots = np.flatnonzero(~other.nonzero(value))
        if roots.size == 0:
            raise InputError(f"modulus of {self} has no root in {other}")
        root = elems[:, roots[0]]
        power = other.ones()
        for k in range(self.e):
            matrix[:, k] = power
            power = other.mul(power, root)
        return matrix

    def extend(self, degree: int, modulus: Optional[Sequence[int]] = None) -> "FieldExtension":
        return extend_field(self, degree, tuple(modulus) if modulus is not None else None)


@dataclass(frozen=True, eq=False)
class FieldExtension:
    base: Field
    field: Field
    degree: int
    matrix: np.ndarray

    def embed(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.base == self.field:
            return x
        return np.tensordot(self.matrix, x, axes=(1, 0)) % self.field.p

    def embed_element(self, x: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.embed(x.array))


@lru_cache(maxsize=64)
def extend_field(base: Field, degree: int, modulus: Optional[tuple] = None) -> FieldExtension:
    if degree < 1:
        raise InputError(f"extension degree must be >= 1, got {degree}")
    if degree == 1 and modulus is None:
        return FieldExtension(base, base, 1, np.eye(base.e, dtype=np.int64))
    total = base.e * degree
    if modulus is None:
        # settings imports this module
        from settings import default_modulus
        modulus = default_modulus(base.p, total)
    big = Field(base.p, total, modulus)
    return FieldExtension(base, big, degree, base.embedding_into(big))


class FieldElement:
    """An immutable element of a Field, stored as its e coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        arr = np.asarray(coeffs, dtype=np.int64).reshape(field.e) % field.p
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in arr))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    @property
    def index(self) -> int:
        return sum(c * self.field.p ** k for k, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "FieldElement":
        return self.field.element(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.array, self._coerce(other).array))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.array, self._coerce(other).array))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.array))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.array, self._coerce(other).array))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.array))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.power(self.array, n))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.field.element(int(other))
        return isinstance(other, FieldElement) and other.field == self.field and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coeffs))

    def __repr__(self):
        if self.field.e == 1:
            return str(self.coeffs[0])
        return f"[{','.join(str(c) for c in self.coeffs)}]"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class UnityOrder:
    a: int
    a_prime: int


def make_field(p: int, e: int, modulus: Sequence[int]) -> Field:
    field = Field(p, e, modulus)
    logger.debug(f"Built F_{field.order} with modulus {list(field.modulus)}")
    return field


def compute_a_prime(a: int, p: int) -> UnityOrder:
    """The p'-part of a (a itself in characteristic 0)."""
    if a < 2:
        raise InputError(f"exponent a must be >= 2, got {a}")
    a_prime = a
    if p > 0:
        while a_prime % p == 0:
            a_prime //= p
    return UnityOrder(a=a, a_prime=a_prime)


def literal_a_prime(a: int, p: int) -> int:
    return a // math.gcd(a, p) if p > 0 else a


def a_prime_discrepancy(a: int, p: int) -> bool:
    return literal_a_prime(a, p) != compute_a_prime(a, p).a_prime


def element_order(field: Field, x: FieldElement) -> int:
    if x.is_zero():
        raise InputError("zero has no multiplicative order")
    order = field.order - 1
    for r in prime_factors(order):
        while order % r == 0 and field.is_one(field.power(x.array, order // r)):
            order //= r
    return order


def primitive_root_of_unity(field: Field, n: int) -> FieldElement:
    """First element of exact multiplicative order n in enumeration order."""
    if n < 1:
        raise InputError(f"root order must be >= 1, got {n}")
    if (field.order - 1) % n:
        raise NoSuchRoot(f"F_{field.order} has no element of order {n}")
    if n == 1:
        return field.element(1)
    elems = field.all_elements
    ok = field.is_one(field.power(elems, n))
    for r in prime_factors(n):
        ok &= ~field.is_one(field.power(elems, n // r))
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        raise NoSuchRoot(f"F_{field.order} has no element of order {n}")
    return FieldElement(field, elems[:, hits[0]])
