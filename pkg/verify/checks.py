"""Executable checks of the correspondence between rank and support varieties.

Every check returns a CheckRecord; a failing record always carries the
offending points (or pairs) as witnesses.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from models.algebra import AlgebraSpec, u_lambda
from models.base import InputError, InternalError, ZeroPoint
from models.homs import Verdict, is_isomorphic, period_of, stable_hom_dim
from models.module import ModuleRep, left_ideal_module
from models.points import ProjectivePointSet, enumerate_points
from models.resolution import Resolution, TooShort, betti_oracle, complexity_estimate, minimal_resolution, syzygy
from schemas.report import CheckRecord, CheckStatus, combine
from settings import get_pool
from varieties.kzeta import PerpViolation, explicit_monomorphism, k_zeta_pullback, k_zeta_tensor_simple, perp_value
from varieties.rank import (
    RankScan,
    TooFewLevels,
    apply_f,
    dimension_estimate,
    lift_to_level,
    rational_fiber_search,
    scan_rank_variety,
    stable_map_check,
)
from varieties.support import (
    AnnihilatorIdeal,
    ExtModuleData,
    annihilator_ideal,
    support_variety_points,
    z_action_matrices,
)
from verify.catalog import CatalogEntry

logger = logging.getLogger(__name__)

PAIR_SAMPLES = 10
LINEAR_FORM_SAMPLES = 100
MAX_DRAWS = 1000


class NotPeriodicCatalogEntry(InputError):
    pass


@dataclass
class ModuleData:
    """Everything the per-module checks share, computed once."""

    module: ModuleRep
    resolution: Resolution
    scans: dict[int, RankScan]
    ext: Optional[ExtModuleData] = None
    ideal: Optional[AnnihilatorIdeal] = None


def prepare(module: ModuleRep, ext_degrees: Sequence[int], degree_bound: int, max_deg: int,
            resolution_steps: int = 10, periodicity_bound: int = 0, threads: int = 0) -> ModuleData:
    steps = max(resolution_steps, max_deg, periodicity_bound)
    res = minimal_resolution(module, steps)
    scans = {d: scan_rank_variety(module, d, threads) for d in ext_degrees}
    ext = z_action_matrices(module, max_deg, threads=threads, resolution=res)
    return ModuleData(module, res, scans, ext, annihilator_ideal(ext, degree_bound))


def _point_json(point: np.ndarray) -> list[list[int]]:
    return np.asarray(point).T.tolist()


def _record(name: str, module_id: Optional[str], started: float, status: CheckStatus,
            witnesses: Optional[list] = None, details: Optional[dict] = None) -> CheckRecord:
    record = CheckRecord(
        name=name,
        module_id=module_id,
        status=status,
        witnesses=witnesses or [],
        details=details or {},
        seconds=round(time.perf_counter() - started, 3),
    )
    log = logger.warning if status == CheckStatus.FAIL else logger.info
    log(f"{name} [{module_id or '-'}]: {status.value}")
    return record


def _verdict_status(verdict: Verdict) -> CheckStatus:
    return {
        Verdict.YES: CheckStatus.PASS,
        Verdict.NO: CheckStatus.FAIL,
        Verdict.INCONCLUSIVE: CheckStatus.INCONCLUSIVE,
    }[verdict]


def verify_avrunin_scott(data: ModuleData, module_id: Optional[str] = None) -> CheckRecord:
    """F(V^r) equals V_H at every level, on rational points of the varieties."""
    started = time.perf_counter()
    module, ideal = data.module, data.ideal
    a = module.algebra.a
    witnesses, levels = [], []
    included, covered = True, True
    for degree, scan in sorted(data.scans.items()):
        image = scan.variety.map_power(a)
        support = support_variety_points(ideal, degree)
        outside = image.difference(support)
        if len(outside):
            included = False
            witnesses.append({"extDegree": degree, "notInSupport": outside.as_lists()})
        extra = support.difference(image)
        fibers = rational_fiber_search(lift_to_level(module, degree), extra.points)
        uncovered = [f.point for f in fibers if not f.covered]
        if uncovered:
            covered = False
            witnesses.append({"extDegree": degree, "withoutPreimage": uncovered})
        levels.append({
            "extDegree": degree,
            "rankVariety": len(scan.variety),
            "image": len(image),
            "supportVariety": len(support),
            "preimageOutsideLevel": len(extra),
        })
    if not included or (not covered and ideal.stabilized):
        status = CheckStatus.FAIL
    elif not ideal.stabilized or not covered:
        status = CheckStatus.INCONCLUSIVE
    else:
        status = CheckStatus.PASS
    details = {
        "levels": levels,
        "stabilized": ideal.stabilized,
        "effectiveBound": ideal.effective_bound,
        "generatorDegrees": ideal.generator_degrees,
        "idealGenerators": len(ideal.generators),
    }
    return _record("avrunin-scott", module_id, started, status, witnesses, details)


def check_unconditional_inclusion(data: ModuleData, module_id: Optional[str] = None) -> CheckRecord:
    """F(V^r) is contained in V_H whatever the annihilator window."""
    started = time.perf_counter()
    a = data.module.algebra.a
    witnesses = []
    for degree, scan in sorted(data.scans.items()):
        outside = scan.variety.map_power(a).difference(support_variety_points(data.ideal, degree))
        if len(outside):
            witnesses.append({"extDegree": degree, "notInSupport": outside.as_lists()})
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("inclusion", module_id, started, status, witnesses, {"stabilized": data.ideal.stabilized})


def check_rank_form(data: ModuleData, module_id: Optional[str] = None) -> CheckRecord:
    """The rank form of the projectivity test and the free-rank count agree with the kernel test."""
    started = time.perf_counter()
    witnesses = []
    for degree, scan in sorted(data.scans.items()):
        if scan.rank_form_disagreements:
            witnesses.append({"extDegree": degree, "rankForm": scan.rank_form_disagreements})
        if scan.freeness_failures:
            witnesses.append({"extDegree": degree, "freeRank": scan.freeness_failures})
    return _record("rank-form", module_id, started, CheckStatus.FAIL if witnesses else CheckStatus.PASS, witnesses)


def verify_stable_map(module: ModuleRep, ext_degree: int = 1, module_id: Optional[str] = None,
                      threads: int = 0) -> CheckRecord:
    """Membership in V^r against nonvanishing stable Hom from A u and A u^{a-1}, at every point."""
    started = time.perf_counter()
    lifted = lift_to_level(module, ext_degree)
    points = enumerate_points(lifted.field, lifted.algebra.c)
    with get_pool(threads) as pool:
        checks = list(pool.map(lambda k: stable_map_check(lifted, points[:, k]), range(points.shape[1])))
    witnesses = [
        {"point": _point_json(points[:, k]), "inRankVariety": r.in_vr,
         "stableHomAu": r.stable_hom_au, "stableHomAuPower": r.stable_hom_au_pow}
        for k, r in enumerate(checks) if not r.agree
    ]
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("stable-map", module_id, started, status, witnesses,
                   {"extDegree": ext_degree, "points": points.shape[1]})


def verify_line_variety(algebra: AlgebraSpec, lam: np.ndarray, ext_degrees: Sequence[int], degree_bound: int,
                        max_deg: int, module_id: Optional[str] = None, data: Optional[ModuleData] = None,
                        threads: int = 0) -> CheckRecord:
    """V_H(A u_lambda) is the single point F(lambda) at every level."""
    started = time.perf_counter()
    if not algebra.field.nonzero(lam).any():
        raise ZeroPoint("lambda")
    if data is None:
        au = left_ideal_module(algebra, u_lambda(algebra, list(lam.T)))[0]
        data = prepare(au, ext_degrees, degree_bound, max_deg, threads=threads)
    witnesses, observed = [], []
    for degree in sorted(ext_degrees):
        ext = algebra.field.extend(degree)
        target = apply_f(ext.embed(lam), algebra.a, field=ext.field)
        expected = ProjectivePointSet.build(ext.field, degree, algebra.c, target[:, None, :])
        support = support_variety_points(data.ideal, degree)
        if support != expected:
            witnesses.append({"extDegree": degree, "expected": expected.as_lists(), "supportVariety": support.as_lists()})
        scan = data.scans[degree] if degree in data.scans else scan_rank_variety(data.module, degree, threads)
        image = scan.variety.map_power(algebra.a)
        if image != expected:
            witnesses.append({"extDegree": degree, "expected": expected.as_lists(), "rankImage": image.as_lists()})
        own = ProjectivePointSet.build(ext.field, degree, algebra.c, ext.embed(lam)[:, None, :])
        observed.append({"extDegree": degree, "rankVarietyIsPoint": scan.variety == own,
                         "rankVariety": scan.variety.as_lists()})
    if witnesses:
        status = CheckStatus.FAIL if data.ideal.stabilized else CheckStatus.INCONCLUSIVE
    else:
        status = CheckStatus.PASS if data.ideal.stabilized else CheckStatus.INCONCLUSIVE
    return _record("line", module_id, started, status, witnesses,
                   {"point": _point_json(lam), "observed": observed, "stabilized": data.ideal.stabilized})


def verify_syzygy_pair(algebra: AlgebraSpec, lam: np.ndarray, module_id: Optional[str] = None) -> CheckRecord:
    """Omega(A u) = A u^{a-1} and Omega(A u^{a-1}) = A u."""
    started = time.perf_counter()
    if not algebra.field.nonzero(lam).any():
        raise ZeroPoint("lambda")
    u = u_lambda(algebra, list(lam.T))
    au = left_ideal_module(algebra, u)[0]
    au_pow = left_ideal_module(algebra, u ** (algebra.a - 1))[0]
    forward = is_isomorphic(syzygy(au), au_pow)
    backward = is_isomorphic(syzygy(au_pow), au)
    statuses = [_verdict_status(forward), _verdict_status(backward)]
    witnesses = []
    if forward != Verdict.YES:
        witnesses.append({"direction": "Omega(Au) ~ Au^(a-1)", "verdict": forward.value})
    if backward != Verdict.YES:
        witnesses.append({"direction": "Omega(Au^(a-1)) ~ Au", "verdict": backward.value})
    details = {"point": _point_json(lam), "dimensions": [au.d, au_pow.d]}
    return _record("syzygy", module_id, started, combine(statuses), witnesses, details)


def verify_complexity_corollaries(entry: CatalogEntry, data: ModuleData, periodicity_bound: int = 12) -> CheckRecord:
    """Cone dimension of V^r equals the complexity; indecomposables are periodic iff it is one."""
    started = time.perf_counter()
    details = {"betti": data.resolution.betti}
    try:
        dimension = dimension_estimate([scan.variety for scan in data.scans.values()])
        complexity = complexity_estimate(data.resolution.betti)
    except (TooFewLevels, TooShort) as exc:
        details["reason"] = str(exc)
        return _record("complexity", entry.id, started, CheckStatus.INCONCLUSIVE, [], details)
    details.update(dimension=dimension, complexity=complexity)
    witnesses = []
    status = CheckStatus.PASS
    if dimension != complexity:
        status = CheckStatus.FAIL
        witnesses.append({"dimension": dimension, "complexity": complexity})
    if entry.indecomposable:
        verdict, period = period_of(entry.module, periodicity_bound, data.resolution)
        details.update(periodic=verdict.value, period=period)
        if verdict == Verdict.INCONCLUSIVE:
            if status == CheckStatus.PASS:
                status = CheckStatus.INCONCLUSIVE
        elif (verdict == Verdict.YES) != (dimension == 1):
            status = CheckStatus.FAIL
            witnesses.append({"dimension": dimension, "periodic": verdict.value, "period": period})
    return _record("complexity", entry.id, started, status, witnesses, details)


def verify_perp_lemma(entry: CatalogEntry, ext_degree: int = 1) -> CheckRecord:
    """For a period-one module with line variety through alpha, nonzero stable Hom into
    K_zeta (x) k forces sum alpha_i mu_i = 0."""
    started = time.perf_counter()
    if not entry.period_one or entry.periodic_line is None:
        raise NotPeriodicCatalogEntry(f"{entry.id} is not a period-one catalog entry with a line variety")
    lifted = lift_to_level(entry.module, ext_degree)
    algebra, field = lifted.algebra, lifted.field
    alpha = entry.module.field.extend(ext_degree).embed(entry.periodic_line)
    mus = enumerate_points(field, algebra.c)
    witnesses, nonzero = [], 0
    for k in range(mus.shape[1]):
        mu = mus[:, k]
        if stable_hom_dim(lifted, k_zeta_tensor_simple(algebra, mu)) == 0:
            continue
        nonzero += 1
        pairing = field.mul(alpha, mu).sum(axis=1) % field.p
        if field.nonzero(pairing).any():
            witnesses.append({"mu": _point_json(mu), "alpha": _point_json(alpha)})
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("perp", entry.id, started, status, witnesses,
                   {"extDegree": ext_degree, "points": mus.shape[1], "nonzeroStableHom": nonzero})


def _random_point(algebra: AlgebraSpec, rng: np.random.Generator) -> np.ndarray:
    field = algebra.field
    while True:
        point = field.random(rng, algebra.c)
        if field.nonzero(point).any():
            return point


def _perpendicular_mu(algebra: AlgebraSpec, lam: np.ndarray, rng: np.random.Generator) -> Optional[np.ndarray]:
    """A nonzero mu with sum mu_i lambda_i^a = 0, solving for the last usable coordinate."""
    field = algebra.field
    powers = field.power(lam, algebra.a)
    pivots = np.flatnonzero(field.nonzero(powers))
    if algebra.c < 2 or not pivots.size:
        return None
    j = int(pivots[-1])
    for _ in range(MAX_DRAWS):
        mu = field.random(rng, algebra.c)
        mu[:, j] = 0
        rest = field.mul(mu, powers).sum(axis=1) % field.p
        mu[:, j] = field.neg(field.mul(rest, field.inv(powers[:, j])))
        if field.nonzero(mu).any():
            return mu
    return None


def check_monomorphisms(algebra: AlgebraSpec, seed: int = 0, samples: int = PAIR_SAMPLES) -> CheckRecord:
    """Perpendicular pairs give injective A-maps A u -> K (x) k; other pairs are rejected."""
    started = time.perf_counter()
    field = algebra.field
    rng = np.random.default_rng(seed)
    witnesses = []
    accepted = rejected = 0
    kzetas = {}
    for _ in range(MAX_DRAWS):
        if accepted >= samples:
            break
        lam = _random_point(algebra, rng)
        mu = _perpendicular_mu(algebra, lam, rng)
        if mu is None:
            continue
        key = tuple(field.encode(mu).tolist())
        try:
            if key not in kzetas:
                kzetas[key] = k_zeta_pullback(algebra, mu)
            explicit_monomorphism(algebra, lam, mu, kzetas[key])
        except InternalError as exc:
            witnesses.append({"lambda": _point_json(lam), "mu": _point_json(mu), "error": str(exc)})
        accepted += 1
    for _ in range(MAX_DRAWS):
        if rejected >= samples:
            break
        lam, mu = _random_point(algebra, rng), _random_point(algebra, rng)
        if not field.nonzero(perp_value(algebra, lam, mu)).any():
            continue
        try:
            explicit_monomorphism(algebra, lam, mu)
            witnesses.append({"lambda": _point_json(lam), "mu": _point_json(mu), "error": "accepted"})
        except PerpViolation:
            pass
        rejected += 1
    details = {"perpendicular": accepted, "nonPerpendicular": rejected}
    if witnesses:
        status = CheckStatus.FAIL
    elif algebra.c > 1 and accepted < samples:
        status = CheckStatus.INCONCLUSIVE
    else:
        status = CheckStatus.PASS
    return _record("monomorphism", None, started, status, witnesses, details)


def check_betti_oracle(resolution: Resolution) -> CheckRecord:
    """Betti numbers of k against the count read off the Ext presentation."""
    started = time.perf_counter()
    algebra = resolution.algebra
    expected = [betti_oracle(algebra.c, algebra.a, n) for n in range(resolution.length + 1)]
    witnesses = [{"degree": n, "computed": b, "expected": x}
                 for n, (b, x) in enumerate(zip(resolution.betti, expected)) if b != x]
    problems = resolution.verify()
    witnesses.extend({"resolution": p} for p in problems)
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("betti-oracle", "k", started, status, witnesses, {"betti": resolution.betti})


def check_linear_forms(algebra: AlgebraSpec, seed: int = 0, samples: int = LINEAR_FORM_SAMPLES) -> CheckRecord:
    """u_lambda^a = 0 for random lambda."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    witnesses = []
    for _ in range(samples):
        lam = algebra.field.random(rng, algebra.c)
        if not (u_lambda(algebra, list(lam.T)) ** algebra.a).is_zero():
            witnesses.append({"lambda": _point_json(lam)})
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("linear-forms", None, started, status, witnesses, {"samples": samples})


def check_z_action(data: ModuleData, module_id: Optional[str] = None, seed: int = 0) -> CheckRecord:
    """The z_i commute on Ext and do not depend on the chosen lifts."""
    started = time.perf_counter()
    witnesses = [{"commutativity": v} for v in data.ext.commutativity_violations()]
    perturbed = z_action_matrices(data.module, data.ext.max_deg, seed=seed, resolution=data.resolution)
    for i, (ours, theirs) in enumerate(zip(data.ext.z, perturbed.z)):
        for n, (x, y) in enumerate(zip(ours, theirs)):
            if not np.array_equal(x, y):
                witnesses.append({"liftDependence": f"z{i + 1} on Ext^{n}"})
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("z-action", module_id, started, status, witnesses, {"maxDeg": data.ext.max_deg})


def check_kzeta_dimension(algebra: AlgebraSpec, mus: Sequence[np.ndarray]) -> CheckRecord:
    """dim K_zeta (x) k = a^c and 0 -> k -> K -> rad A -> 0 is exact."""
    started = time.perf_counter()
    witnesses = []
    for mu in mus:
        kzeta = k_zeta_pullback(algebra, mu)
        if kzeta.module.d != algebra.dim or not kzeta.sequence_exact():
            witnesses.append({"mu": _point_json(mu), "dimension": kzeta.module.d})
    status = CheckStatus.FAIL if witnesses else CheckStatus.PASS
    return _record("kzeta-dimension", None, started, status, witnesses, {"expected": algebra.dim})
