"""Support varieties through the action of R = k[z_1..z_c] on Ext*(M, k).

The classes z_i live in Ext^2(k, k). They act on Ext*(M, k) by Yoneda
composition, computed by lifting each dual-basis cocycle of a minimal
resolution of M through the explicit three-term resolution prefix of k.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations_with_replacement
from typing import Optional

import numpy as np

from models import linalg
from models.algebra import AlgebraSpec
from models.base import InconsistentSystem, InputError, InternalError
from models.field import Field, FieldElement
from models.module import ModuleRep, simple_module
from models.points import ProjectivePointSet, enumerate_points
from models.resolution import Resolution, minimal_resolution
from settings import get_pool

logger = logging.getLogger(__name__)


class LiftingFailure(InternalError):
    pass


class WindowTooSmall(InputError):
    pass


@dataclass
class SimpleResolutionPrefix:
    """A^m -> A^c -> A -> k with e_i -> x_i and the listed degree-2 generators."""

    algebra: AlgebraSpec
    d1: np.ndarray
    d2: np.ndarray
    # generator k of P2 as its image in P1 = A^c, shape (e, c*a^c)
    generators: list[np.ndarray]
    labels: list[str]
    # f_{z_i} as a (c, m*a^c) matrix: unit coefficient of component i
    fz: np.ndarray

    @property
    def rank2(self) -> int:
        return len(self.generators)

    def verify(self) -> list[str]:
        field, dim, c = self.algebra.field, self.algebra.dim, self.algebra.c
        problems = []
        if not linalg.is_zero(field.matmul(self.d1, self.d2)):
            problems.append("d1 d2 != 0")
        if 1 + linalg.rank(field, self.d1) != dim:
            problems.append("P1 -> P0 is not exact at P0")
        if linalg.rank(field, self.d1) + linalg.rank(field, self.d2) != c * dim:
            problems.append("P2 -> P1 -> P0 is not exact at P1")
        betti = minimal_resolution(simple_module(self.algebra), 2).betti
        if betti[1:] != [c, self.rank2]:
            problems.append(f"betti numbers {betti} do not match the prefix ranks")
        return problems


def _free_map(algebra: AlgebraSpec, images: list[list]) -> np.ndarray:
    """Field matrix of the A-linear map A^n -> A^m sending e_k to images[k] (m elements each)."""
    blocks = [[algebra.right_matrix(v) for v in image] for image in images]
    columns = [np.concatenate(col, axis=1) for col in blocks]
    return np.concatenate(columns, axis=2)


def simple_resolution_prefix(algebra: AlgebraSpec) -> SimpleResolutionPrefix:
    field, c, a, dim = algebra.field, algebra.c, algebra.a, algebra.dim
    zero = algebra.zero()
    d1 = _free_map(algebra, [[algebra.generator(i)] for i in range(c)])
    images, labels = [], []
    for i in range(c):
        image = [zero] * c
        image[i] = algebra.generator(i) ** (a - 1)
        images.append(image)
        labels.append(f"x{i + 1}^{a - 1} e{i + 1}" if a > 2 else f"x{i + 1} e{i + 1}")
    for i in range(c):
        for j in range(i + 1, c):
            image = [zero] * c
            image[i] = algebra.generator(j).scale(algebra.q)
            image[j] = -algebra.generator(i)
            images.append(image)
            labels.append(f"q x{j + 1} e{i + 1} - x{i + 1} e{j + 1}")
    d2 = _free_map(algebra, images)
    generators = [np.concatenate([v.coeffs for v in image], axis=1) for image in images]
    fz = field.zeros(c, len(images) * dim)
    for i in range(c):
        fz[0, i, i * dim] = 1
    prefix = SimpleResolutionPrefix(algebra, d1, d2, generators, labels, fz)
    problems = prefix.verify()
    if problems:
        raise InternalError(f"resolution prefix of k is inconsistent: {'; '.join(problems)}")
    return prefix


@dataclass
class ExtModuleData:
    module: ModuleRep
    max_deg: int
    betti: list[int]
    # z[i][n] has shape (e, b_{n+2}, b_n)
    z: list[list[np.ndarray]]

    @property
    def field(self) -> Field:
        return self.module.field

    @property
    def c(self) -> int:
        return self.module.algebra.c

    def commutativity_violations(self) -> list[str]:
        field = self.field
        out = []
        for n in range(self.max_deg - 3):
            for i in range(self.c):
                for j in range(i + 1, self.c):
                    lhs = field.matmul(self.z[i][n + 2], self.z[j][n])
                    rhs = field.matmul(self.z[j][n + 2], self.z[i][n])
                    if not np.array_equal(lhs, rhs):
                        out.append(f"z{i + 1} z{j + 1} != z{j + 1} z{i + 1} on Ext^{n}")
        return out


def _left_monomial_action(algebra: AlgebraSpec, vectors: np.ndarray, components: int) -> np.ndarray:
    """b_s w for every basis monomial b_s and every column w of a free module A^components.

    vectors has shape (e, components*dim, B); the result has shape (e, dim, B, components*dim).
    """
    field, dim = algebra.field, algebra.dim
    batch = vectors.shape[2]
    per = np.moveaxis(vectors, 2, 1).reshape(field.e, 1, batch, components, dim, 1)
    mons = algebra.monomial_left[:, :, None, None]
    moved = field.matmul(mons, per)
    return moved.reshape(field.e, dim, batch, components * dim)


def _lift_class(
    prefix: SimpleResolutionPrefix,
    solver1: linalg.Solver,
    solver2: linalg.Solver,
    res: Resolution,
    n: int,
    g: int,
    rng: Optional[np.random.Generator],
) -> np.ndarray:
    """Lift the dual class of generator g of F_n to F_{n+2} -> P2; returns generator images (e, m*dim, b_{n+2})."""
    algebra = prefix.algebra
    field, dim, c = algebra.field, algebra.dim, algebra.c
    b1, b2 = res.betti[n + 1], res.betti[n + 2]
    # theta_0(e_j) = delta_gj; so theta_0 d(e_j) is the entry (g, j) of d_{n+1}
    rhs1 = res.entries[n][:, g, :, :]
    rhs1 = np.moveaxis(rhs1, 1, 2)
    try:
        w1 = solver1.solve(rhs1)
        if rng is not None and w1.shape[2]:
            kern = solver1.nullspace()
            w1 = field.add(w1, field.matmul(kern, field.random(rng, kern.shape[2], b1)))
        if b1 == 0:
            rhs2 = field.zeros(c * dim, b2)
        else:
            moved = _left_monomial_action(algebra, w1, c)
            # coeffs[j, (s, l)] = coefficient of b_s in entry (l, j) of d_{n+2}
            coeffs = np.transpose(res.entries[n + 1], (0, 2, 3, 1)).reshape(field.e, b2, dim * b1)
            rhs2 = linalg.transpose(field.matmul(coeffs, moved.reshape(field.e, dim * b1, c * dim)))
        w2 = solver2.solve(rhs2)
        if rng is not None and w2.shape[2]:
            kern = solver2.nullspace()
            w2 = field.add(w2, field.matmul(kern, field.random(rng, kern.shape[2], b2)))
    except InconsistentSystem as exc:
        raise LiftingFailure(f"cannot lift the class of generator {g} in degree {n}") from exc
    return w2


def z_action_matrices(
    module: ModuleRep,
    max_deg: int,
    seed: Optional[int] = None,
    threads: int = 0,
    resolution: Optional[Resolution] = None,
) -> ExtModuleData:
    """Z_i(n): Ext^n(M, k) -> Ext^{n+2}(M, k) for n <= max_deg - 2.

    A seed perturbs every lift by random kernel elements; the matrices must not change.
    """
    if max_deg < 2:
        raise InputError(f"maximal degree must be >= 2, got {max_deg}")
    algebra = module.algebra
    field, dim, c = algebra.field, algebra.dim, algebra.c
    prefix = simple_resolution_prefix(algebra)
    res = resolution if resolution is not None and resolution.length >= max_deg else minimal_resolution(module, max_deg)
    solver1 = linalg.Solver(field, prefix.d1)
    solver2 = linalg.Solver(field, prefix.d2)
    rng = np.random.default_rng(seed) if seed is not None else None

    def degree(n: int) -> list[np.ndarray]:
        b0, b2 = res.betti[n], res.betti[n + 2]
        mats = [field.zeros(b2, b0) for _ in range(c)]
        for g in range(b0):
            w2 = _lift_class(prefix, solver1, solver2, res, n, g, rng)
            for i in range(c):
                mats[i][:, :, g] = w2[:, i * dim, :]
        return mats

    # the seeded generator is not shared across threads
    with get_pool(1 if rng is not None else threads) as pool:
        per_degree = list(pool.map(degree, range(max_deg - 1)))
    z = [[per_degree[n][i] for n in range(max_deg - 1)] for i in range(c)]
    logger.info(f"Computed z-action on Ext up to degree {max_deg}: betti {res.betti}")
    return ExtModuleData(module, max_deg, list(res.betti[: max_deg + 1]), z)


@dataclass
class Polynomial:
    """A homogeneous polynomial in z_1..z_c: coefficient planes over the listed exponent tuples."""

    exps: list[tuple[int, ...]]
    coeffs: np.ndarray

    def terms(self, field: Field) -> list[tuple[tuple[int, ...], FieldElement]]:
        out = []
        for k, exps in enumerate(self.exps):
            if field.nonzero(self.coeffs[:, k]):
                out.append((exps, FieldElement(field, self.coeffs[:, k])))
        return out

    @property
    def degree(self) -> int:
        return sum(self.exps[0]) if self.exps else 0


@dataclass
class AnnihilatorIdeal:
    field: Field
    c: int
    degree_bound: int
    effective_bound: int
    stabilized: bool
    generator_degrees: list[int]
    generators: list[Polynomial] = dataclass_field(default_factory=list)

    def is_unit(self) -> bool:
        return any(p.degree == 0 for p in self.generators)


def monomials(c: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree `degree`, in descending lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(c), degree):
        exps = [0] * c
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def ext_generators(data: ExtModuleData) -> list[tuple[int, np.ndarray]]:
    """Generators of Ext*(M, k) over R: complements of sum_i im Z_i(n-2) in each degree."""
    field = data.field
    gens = []
    for n in range(data.max_deg + 1):
        size = data.betti[n]
        if size == 0:
            continue
        if n >= 2:
            image = np.concatenate([data.z[i][n - 2] for i in range(data.c)], axis=2)
        else:
            image = field.zeros(size, 0)
        for j in linalg.complement_columns(field, image, size):
            vec = field.zeros(size)
            vec[0, j] = 1
            gens.append((n, vec))
    return gens


def _apply_monomial(data: ExtModuleData, exps: tuple[int, ...], degree: int, vec: np.ndarray) -> np.ndarray:
    field = data.field
    current, n = vec, degree
    for i in range(data.c - 1, -1, -1):
        for _ in range(exps[i]):
            current = field.matmul(data.z[i][n], current[:, :, None])[:, :, 0]
            n += 2
    return current


def annihilator_ideal(data: ExtModuleData, degree_bound: int) -> AnnihilatorIdeal:
    """Minimal homogeneous generators of Ann_R Ext*(M, k) up to the degree bound."""
    if degree_bound % 2 or degree_bound < 0:
        raise WindowTooSmall(f"degree bound must be even and >= 0, got {degree_bound}")
    if degree_bound > data.max_deg - 2:
        raise WindowTooSmall(f"degree bound {degree_bound} needs Ext up to degree {degree_bound + 2}, have {data.max_deg}")
    field, c = data.field, data.c
    gens = ext_generators(data)
    gen_degrees = sorted({n for n, _ in gens})
    top = max(gen_degrees) if gen_degrees else 0
    steps = min(degree_bound // 2, (data.max_deg - top) // 2)
    effective = 2 * steps
    window_top = data.max_deg - (data.max_deg + 1) // 3
    late = [n for n in gen_degrees if n > window_top]
    stabilized = not late and effective == degree_bound
    if not stabilized:
        logger.warning(
            f"Annihilator window not stabilized: generators in degrees {gen_degrees}, effective bound {effective}"
        )
    found: list[Polynomial] = []
    previous: Optional[np.ndarray] = None  # annihilator basis in the previous degree, columns over monomials
    previous_monos: list[tuple[int, ...]] = []
    for delta in range(steps + 1):
        monos = monomials(c, delta)
        index = {m: k for k, m in enumerate(monos)}
        columns = []
        for m in monos:
            parts = [_apply_monomial(data, m, n, vec) for n, vec in gens]
            columns.append(np.concatenate(parts, axis=1) if parts else field.zeros(0))
        evaluation = np.stack(columns, axis=2) if columns else field.zeros(0, 0)
        ideal_part = linalg.nullspace(field, evaluation)
        # degree-delta part of the ideal generated in lower degrees
        lower = []
        if previous is not None and previous.shape[2]:
            for i in range(c):
                shift = field.zeros(len(monos), len(previous_monos))
                for k, m in enumerate(previous_monos):
                    raised = list(m)
                    raised[i] += 1
                    shift[0, index[tuple(raised)], k] = 1
                lower.append(field.matmul(shift, previous))
        span = np.concatenate(lower, axis=2) if lower else field.zeros(len(monos), 0)
        rank = linalg.rank(field, span)
        for k in range(ideal_part.shape[2]):
            candidate = np.concatenate([span, ideal_part[:, :, k:k + 1]], axis=2)
            new_rank = linalg.rank(field, candidate)
            if new_rank > rank:
                found.append(Polynomial(monos, ideal_part[:, :, k]))
                span, rank = candidate, new_rank
        previous, previous_monos = ideal_part, monos
    logger.info(f"Annihilator: {len(found)} generators up to degree {effective} (bound {degree_bound})")
    return AnnihilatorIdeal(field, c, degree_bound, effective, stabilized, gen_degrees, found)


def evaluate(field: Field, poly: Polynomial, points: np.ndarray) -> np.ndarray:
    """Values of the polynomial at every point of a (e, n, c) array over `field`."""
    total = field.zeros(points.shape[1])
    for k, exps in enumerate(poly.exps):
        coef = poly.coeffs[:, k]
        if not field.nonzero(coef):
            continue
        term = field.ones(points.shape[1])
        for i, power in enumerate(exps):
            if power:
                term = field.mul(term, field.power(points[:, :, i], power))
        total = field.add(total, field.mul(coef[:, None], term))
    return total


def support_variety_points(ideal: AnnihilatorIdeal, ext_degree: int) -> ProjectivePointSet:
    """Zero set of the ideal in P^{c-1}(F_{p^{e e'}})."""
    ext = ideal.field.extend(ext_degree)
    field = ext.field
    points = enumerate_points(field, ideal.c)
    keep = np.ones(points.shape[1], dtype=bool)
    for poly in ideal.generators:
        lifted = Polynomial(poly.exps, ext.embed(poly.coeffs))
        keep &= ~field.nonzero(evaluate(field, lifted, points))
    return ProjectivePointSet.build(field, ext_degree, ideal.c, points[:, keep], points.shape[1])


def support_variety(module: ModuleRep, degree_bound: int = 8, max_deg: Optional[int] = None,
                    threads: int = 0) -> AnnihilatorIdeal:
    """Annihilator ideal of Ext*(M, k) with the default window N = D + 4."""
    max_deg = max_deg if max_deg is not None else degree_bound + 4
    return annihilator_ideal(z_action_matrices(module, max_deg, threads=threads), degree_bound)
