"""Rank varieties: the points lambda at which M is not free over k[u_lambda]."""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Sequence

import numpy as np

from models import linalg
from models.algebra import u_lambda
from models.base import InputError, ZeroPoint
from models.field import Field
from models.homs import stable_hom_dim
from models.module import ModuleRep, action_matrix, extend, left_ideal_module
from models.points import ProjectivePointSet, enumerate_points, normalize, power_map
from settings import get_pool

logger = logging.getLogger(__name__)


class TooFewLevels(InputError):
    pass


def as_point(field: Field, lam) -> np.ndarray:
    """Coordinates as planes of shape (e, c)."""
    if isinstance(lam, np.ndarray) and lam.ndim == 2 and lam.shape[0] == field.e:
        return lam.astype(np.int64) % field.p
    return field.stack(lam)


def linear_action(module: ModuleRep, point: np.ndarray) -> np.ndarray:
    """U = sum_i lambda_i X_i, the action of u_lambda."""
    return action_matrix(module, u_lambda(module.algebra, list(point.T)))


def _ranks(module: ModuleRep, point: np.ndarray) -> tuple[int, int]:
    field = module.field
    if not field.nonzero(point).any():
        raise ZeroPoint()
    u = linear_action(module, point)
    power = u
    for _ in range(module.algebra.a - 2):
        power = field.matmul(u, power)
    return linalg.rank(field, u), linalg.rank(field, power)


def is_non_projective_point(module: ModuleRep, lam) -> bool:
    """dim Ker U + dim Ker U^{a-1} > d, i.e. M is not free over k[u_lambda]."""
    r1, r2 = _ranks(module, as_point(module.field, lam))
    return r1 + r2 < module.d


def rank_form_non_projective(module: ModuleRep, lam) -> bool:
    """The rank form of the test, dim Im U < ((a-1)/a) dim M."""
    r1, _ = _ranks(module, as_point(module.field, lam))
    a = module.algebra.a
    return a * r1 < (a - 1) * module.d


@dataclass
class PointVerdict:
    non_projective: bool
    rank_form: bool
    rank: int
    free_rank_ok: bool


def _inspect_point(module: ModuleRep, point: np.ndarray) -> PointVerdict:
    r1, r2 = _ranks(module, point)
    a, d = module.algebra.a, module.d
    non_projective = r1 + r2 < d
    free_ok = True
    if not non_projective and d % a == 0:
        free_ok = r1 == d * (a - 1) // a
    return PointVerdict(non_projective, a * r1 < (a - 1) * d, r1, free_ok)


@dataclass
class RankScan:
    variety: ProjectivePointSet
    rank_form_disagreements: list[list[list[int]]] = dataclass_field(default_factory=list)
    freeness_failures: list[list[list[int]]] = dataclass_field(default_factory=list)


def scan_rank_variety(module: ModuleRep, ext_degree: int, threads: int = 0) -> RankScan:
    """Test every point of P^{c-1}(F_{p^{e e'}}), recording both forms of the test."""
    if ext_degree < 1:
        raise InputError(f"extension degree must be >= 1, got {ext_degree}")
    ext = module.field.extend(ext_degree)
    lifted = extend(module, ext)
    field, c = ext.field, module.algebra.c
    points = enumerate_points(field, c)
    count = points.shape[1]
    logger.info(f"Scanning {count} points of P^{c - 1}(F_{field.order}) on a module of dimension {module.d}")
    with get_pool(threads) as pool:
        verdicts = list(pool.map(lambda k: _inspect_point(lifted, points[:, k]), range(count)))
    keep = [k for k, v in enumerate(verdicts) if v.non_projective]
    as_lists = np.moveaxis(points, 0, 2).tolist()
    disagreements = [as_lists[k] for k, v in enumerate(verdicts) if v.rank_form != v.non_projective]
    failures = [as_lists[k] for k, v in enumerate(verdicts) if not v.free_rank_ok]
    if disagreements:
        logger.warning(f"Rank form disagrees with the kernel test at {len(disagreements)} points")
    variety = ProjectivePointSet.build(field, ext_degree, c, points[:, keep], count)
    return RankScan(variety, disagreements, failures)


def rank_variety(module: ModuleRep, ext_degree: int, threads: int = 0) -> ProjectivePointSet:
    return scan_rank_variety(module, ext_degree, threads).variety


def apply_f(target, a: int, field: Optional[Field] = None):
    """Coordinatewise a-th power on a point set, or on one point given with its field."""
    if isinstance(target, ProjectivePointSet):
        return target.map_power(a)
    if field is None:
        raise InputError("a single point needs its field")
    point = as_point(field, target)
    return power_map(field, point[:, None, :], a)[:, 0, :]


def dimension_estimate(sets: Sequence[ProjectivePointSet]) -> int:
    """Cone dimension from point counts at extension levels e' and 2e'."""
    counts = {s.ext_degree: (len(s), s.field.order) for s in sets}
    if len(counts) < 2:
        raise TooFewLevels("dimension estimate needs point sets from at least two extension degrees")
    values = [n for n, _ in counts.values()]
    if not any(values):
        return 0
    if len(set(values)) == 1:
        return 1
    pairs = [e for e in counts if 2 * e in counts]
    if not pairs:
        raise TooFewLevels(f"no pair of levels (e', 2e') among {sorted(counts)}")
    low = max(pairs)
    n_low, order = counts[low]
    n_high, _ = counts[2 * low]
    ratio = n_high / max(n_low, 1)
    return 1 + int(round(math.log(ratio, order))) if ratio > 0 else 0


@dataclass
class StableMapCheck:
    in_vr: bool
    stable_hom_au: bool
    stable_hom_au_pow: bool

    @property
    def agree(self) -> bool:
        return self.in_vr == self.stable_hom_au == self.stable_hom_au_pow


def stable_map_check(module: ModuleRep, lam) -> StableMapCheck:
    """Membership of lambda and nonvanishing of stable Hom from A u and A u^{a-1}."""
    algebra = module.algebra
    point = as_point(module.field, lam)
    if not module.field.nonzero(point).any():
        raise ZeroPoint()
    u = u_lambda(algebra, list(point.T))
    au = left_ideal_module(algebra, u)[0]
    au_pow = left_ideal_module(algebra, u ** (algebra.a - 1))[0]
    return StableMapCheck(
        in_vr=is_non_projective_point(module, point),
        stable_hom_au=stable_hom_dim(au, module) != 0,
        stable_hom_au_pow=stable_hom_dim(au_pow, module) != 0,
    )


def root_extension_degree(order: int, a_prime: int) -> int:
    """Smallest m with a'(Q-1) dividing Q^m - 1: every element of F_Q has an a'-th root in F_{Q^m}."""
    m = 1
    while (order ** m - 1) % (a_prime * (order - 1)):
        m += 1
    return m


@dataclass
class FiberResult:
    point: list[list[int]]
    covered: bool
    witness: Optional[list[list[int]]] = None


def rational_fiber_search(module: ModuleRep, points: np.ndarray) -> list[FiberResult]:
    """For each point alpha (over the module's field) look for lambda in V^r with F(lambda) = alpha.

    The search runs over the smallest extension in which every coordinate of
    alpha has an a-th root.
    """
    algebra = module.algebra
    field, a = module.field, algebra.a
    if points.shape[1] == 0:
        return []
    m = root_extension_degree(field.order, algebra.unity.a_prime)
    ext = field.extend(m)
    big = ext.field
    lifted = extend(module, ext)
    elems = big.all_elements
    powers = big.encode(big.power(elems, a))
    alphas = normalize(field, points)
    results = []
    for k in range(alphas.shape[1]):
        alpha = ext.embed(alphas[:, k])
        targets = big.encode(alpha)
        roots = [np.flatnonzero(powers == t) for t in targets]
        found = None
        for choice in np.array(np.meshgrid(*roots, indexing="ij")).reshape(algebra.c, -1).T:
            candidate = elems[:, choice]
            if is_non_projective_point(lifted, candidate):
                found = np.moveaxis(candidate, 0, 1).tolist()
                break
        results.append(FiberResult(np.moveaxis(alphas[:, k], 0, 1).tolist(), found is not None, found))
    return results


def lift_to_level(module: ModuleRep, ext_degree: int) -> ModuleRep:
    return extend(module, module.field.extend(ext_degree))
