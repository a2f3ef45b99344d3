"""The module K_zeta (x)_A k for zeta = sum mu_i z_i and the monomorphism from A u_lambda.

K_zeta (x)_A k is built as the kernel of (pi, h): A + rad A -> A/soc(A), where
h = pi o sum_i mu_i g_i and g_i: rad A -> A is the A-linear map with
g_i(x_j) = delta_ij q^{i-1} prod_{n != i} x_n^{a-1}.
"""

import logging
from dataclasses import dataclass

import numpy as np

from models import linalg
from models.algebra import AlgebraSpec, AlgElement, u_lambda
from models.base import InconsistentSystem, InputError, InternalError, ZeroPoint
from models.module import (
    ModuleRep,
    cosyzygy_of_simple,
    direct_sum,
    left_ideal_module,
    regular_module,
    simple_module,
    submodule,
)
from models.resolution import syzygy

logger = logging.getLogger(__name__)


class GeneratorExtensionFailure(InternalError):
    pass


class PerpViolation(InputError):
    pass


class NotInjective(InternalError):
    pass


class MapNotWellDefined(InternalError):
    pass


def _corner(algebra: AlgebraSpec, i: int) -> AlgElement:
    """q^{i} prod_{n != i} x_n^{a-1} (0-based i)."""
    exps = [algebra.a - 1] * algebra.c
    exps[i] = 0
    return algebra.monomial(exps, algebra.q ** i)


def generator_map(algebra: AlgebraSpec, i: int) -> np.ndarray:
    """g_i on the monomial basis of rad A, as a dim x (dim-1) matrix.

    A monomial x^e in rad A factors as x^{e - delta_l} x_l with l its last
    variable, so g_i(x^e) = x^{e - delta_l} g_i(x_l).
    """
    field, dim = algebra.field, algebra.dim
    out = field.zeros(dim, dim - 1)
    corner = _corner(algebra, i)
    for s in range(1, dim):
        exps = list(algebra.exponents[s])
        last = max(k for k, x in enumerate(exps) if x)
        if last != i:
            continue
        exps[last] -= 1
        out[:, :, s - 1] = (algebra.monomial(exps) * corner).coeffs
    return out


@dataclass
class KZeta:
    algebra: AlgebraSpec
    mu: np.ndarray
    module: ModuleRep
    # kernel basis inside A + rad A, shape (e, 2*dim - 1, dim)
    inclusion: np.ndarray
    radical: ModuleRep

    def sequence_exact(self) -> bool:
        """0 -> k -> K -> rad A -> 0, with K -> rad A the second projection."""
        field, dim = self.algebra.field, self.algebra.dim
        projection = self.inclusion[:, dim:, :]
        return linalg.rank(field, projection) == dim - 1 and self.module.d == dim


def _check_point(algebra: AlgebraSpec, values, name: str = "mu") -> np.ndarray:
    point = values if isinstance(values, np.ndarray) else algebra.field.stack(values)
    if point.shape != (algebra.field.e, algebra.c):
        raise InputError(f"{name} needs {algebra.c} coordinates")
    if not algebra.field.nonzero(point).any():
        raise ZeroPoint(name)
    return point % algebra.field.p


def k_zeta_pullback(algebra: AlgebraSpec, mu) -> KZeta:
    field, dim = algebra.field, algebra.dim
    mu = _check_point(algebra, mu)
    regular = regular_module(algebra)
    radical = syzygy(simple_module(algebra))
    quotient, pi = cosyzygy_of_simple(algebra)
    g = field.zeros(dim, dim - 1)
    for i in range(algebra.c):
        g = field.add(g, field.mul(mu[:, i, None, None], generator_map(algebra, i)))
    h = field.matmul(pi, g)
    for j in range(algebra.c):
        if not np.array_equal(field.matmul(h, radical.X(j)), field.matmul(quotient.X(j), h)):
            raise GeneratorExtensionFailure(f"pi o g is not A-linear on rad A for x{j + 1}")
    inclusion = linalg.nullspace(field, np.concatenate([pi, h], axis=2))
    module = submodule(direct_sum(regular, radical), inclusion)
    logger.debug(f"K_zeta (x) k for mu={mu.T.tolist()}: dimension {module.d}")
    return KZeta(algebra, mu, module, inclusion, radical)


def k_zeta_tensor_simple(algebra: AlgebraSpec, mu) -> ModuleRep:
    return k_zeta_pullback(algebra, mu).module


@dataclass
class Monomorphism:
    source: ModuleRep
    target: KZeta
    matrix: np.ndarray
    injective: bool
    a_linear: bool


def perp_value(algebra: AlgebraSpec, lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """sum_i mu_i lambda_i^a."""
    field = algebra.field
    return field.mul(mu, field.power(lam, algebra.a)).sum(axis=1) % field.p


def explicit_monomorphism(algebra: AlgebraSpec, lam, mu, kzeta: KZeta = None) -> Monomorphism:
    """A u_lambda -> K_zeta (x) k sending u_lambda to (sum_i mu_i g_i(u_lambda), -u_lambda)."""
    field = algebra.field
    lam = _check_point(algebra, lam, "lambda")
    mu = _check_point(algebra, mu)
    if field.nonzero(perp_value(algebra, lam, mu)).any():
        raise PerpViolation("sum_i mu_i lambda_i^a must vanish")
    kzeta = kzeta or k_zeta_pullback(algebra, mu)
    u = u_lambda(algebra, list(lam.T))
    y = algebra.zero()
    for i in range(algebra.c):
        y = y + _corner(algebra, i).scale(field.mul(mu[:, i], lam[:, i]))
    source, basis = left_ideal_module(algebra, u)
    right_u = algebra.right_matrix(u)
    right_y = algebra.right_matrix(y)
    if not linalg.is_zero(field.matmul(right_y, linalg.nullspace(field, right_u))):
        raise MapNotWellDefined("b u_lambda = 0 does not force b y = 0")
    try:
        preimages = linalg.solve(field, right_u, basis)
        image = np.concatenate(
            [field.matmul(right_y, preimages), field.neg(basis[:, 1:, :])], axis=1
        )
        matrix = linalg.solve(field, kzeta.inclusion, image)
    except InconsistentSystem as exc:
        raise MapNotWellDefined("image of u_lambda is not in the pullback") from exc
    a_linear = all(
        np.array_equal(field.matmul(matrix, source.X(i)), field.matmul(kzeta.module.X(i), matrix))
        for i in range(algebra.c)
    )
    injective = linalg.rank(field, matrix) == source.d
    if not a_linear:
        raise MapNotWellDefined("the map is not A-linear")
    if not injective:
        raise NotInjective(f"map from A u_lambda (dimension {source.d}) is not injective")
    return Monomorphism(source, kzeta, matrix, injective, a_linear)
