import logging
from typing import Optional

from models.algebra import AlgebraSpec
from models.field import a_prime_discrepancy, literal_a_prime
from models.module import simple_module
from models.resolution import minimal_resolution
from schemas.config import RunConfig
from schemas.report import CheckRecord, ConfigurationSummary, VerificationReport
from settings import get_pool
from storage import config_algebra
from verify import checks
from verify.catalog import (
    CATALOG_VERSION,
    CatalogEntry,
    build_catalog,
    parse_points,
    random_entries,
    user_entries,
)

logger = logging.getLogger(__name__)


def summarize(algebra: AlgebraSpec, config: RunConfig) -> ConfigurationSummary:
    field = algebra.field
    discrepancy = a_prime_discrepancy(algebra.a, field.p)
    if discrepancy:
        logger.warning(
            f"a' for a={algebra.a}, p={field.p}: the p'-part {algebra.unity.a_prime} differs from "
            f"a/gcd(a,p) = {literal_a_prime(algebra.a, field.p)}; q is taken of order {algebra.unity.a_prime}"
        )
    return ConfigurationSummary(
        p=field.p,
        e=field.e,
        a=algebra.a,
        c=algebra.c,
        q=algebra.q.to_json(),
        a_prime=algebra.unity.a_prime,
        a_prime_literal=literal_a_prime(algebra.a, field.p),
        a_prime_discrepancy=discrepancy,
        ext_degrees=config.ext_degrees,
        degree_bound=config.degree_bound,
        max_deg=config.max_deg,
        resolution_steps=config.resolution_steps,
    )


def entry_checks(entry: CatalogEntry, config: RunConfig, threads: int = 1) -> list[CheckRecord]:
    """Every per-module check for one catalog entry."""
    logger.info(f"Checking {entry.id} (dimension {entry.module.d})")
    data = checks.prepare(
        entry.module,
        config.ext_degrees,
        config.degree_bound,
        config.max_deg,
        config.resolution_steps,
        config.periodicity_bound if entry.indecomposable else 0,
        threads=threads,
    )
    if entry.kind == "random":
        return [checks.check_unconditional_inclusion(data, entry.id), checks.check_rank_form(data, entry.id)]
    records = [
        checks.verify_avrunin_scott(data, entry.id),
        checks.check_unconditional_inclusion(data, entry.id),
        checks.check_rank_form(data, entry.id),
        checks.verify_stable_map(entry.module, config.ext_degrees[0], entry.id, threads=threads),
        checks.verify_complexity_corollaries(entry, data, config.periodicity_bound),
        checks.check_z_action(data, entry.id, seed=config.seed),
    ]
    if entry.kind == "ideal":
        algebra = entry.module.algebra
        records.append(checks.verify_line_variety(
            algebra, entry.point, config.ext_degrees, config.degree_bound, config.max_deg, entry.id, data
        ))
        records.append(checks.verify_syzygy_pair(algebra, entry.point, entry.id))
    if entry.period_one and entry.periodic_line is not None:
        records.append(checks.verify_perp_lemma(entry, config.ext_degrees[0]))
    return records


def algebra_checks(algebra: AlgebraSpec, config: RunConfig, mus: list) -> list[CheckRecord]:
    k_resolution = minimal_resolution(simple_module(algebra), max(config.resolution_steps, 10))
    return [
        checks.check_betti_oracle(k_resolution),
        checks.check_linear_forms(algebra, config.seed),
        checks.check_kzeta_dimension(algebra, mus),
        checks.check_monomorphisms(algebra, config.seed),
    ]


def run_suite(config: RunConfig, algebra: Optional[AlgebraSpec] = None) -> VerificationReport:
    """Run the catalog (plus user and random modules) through every check."""
    algebra = algebra or config_algebra(config)
    summary = summarize(algebra, config)
    lambdas = parse_points(algebra, config.lambdas) if config.lambdas else None
    mus = parse_points(algebra, config.mus) if config.mus else None
    entries = build_catalog(algebra, lambdas, mus)
    entries += user_entries(config.modules, algebra)
    entries += random_entries(algebra, config.random_modules, config.seed)
    records = algebra_checks(algebra, config, [e.point for e in entries if e.kind == "kzeta"])
    with get_pool(config.threads) as pool:
        # nested work stays single-threaded when entries already run in parallel
        per_entry = list(pool.map(lambda entry: entry_checks(entry, config, threads=1), entries))
    for chunk in per_entry:
        records.extend(chunk)
    report = VerificationReport.assemble(CATALOG_VERSION, summary, records)
    logger.info(
        f"Suite finished: {report.passed} passed, {report.failed} failed, {report.inconclusive} inconclusive"
    )
    return report
