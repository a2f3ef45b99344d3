import logging
from typing import Callable, Optional

import click

from commands import handle_errors, parse_degrees, parse_point
from models.algebra import AlgebraSpec
from schemas.config import RunConfig
from schemas.report import CheckRecord, VerificationReport
from storage import config_algebra, load_config, load_module, save_json
from verify import checks
from verify.catalog import CATALOG_VERSION, CatalogEntry, build_catalog, default_lambdas, parse_points
from verify.suite import run_suite, summarize

logger = logging.getLogger(__name__)

config_option = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
module_option = click.option("--module", "module_path", type=click.Path(exists=True, dir_okay=False), default=None,
                             help="Check this module file instead of the catalog.")
entry_option = click.option("--entry", "entry_id", default=None, help="Check one catalog entry by id.")
ext_option = click.option("--ext", default=None, help="Override the configured extension degrees.")
lambda_option = click.option("--lambda", "lam", default=None, help="Point as comma-separated element indices.")
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None)


def _load(config_path: str, ext: Optional[str]) -> tuple[RunConfig, AlgebraSpec]:
    config = load_config(config_path)
    if ext:
        config = config.model_copy(update={"ext_degrees": parse_degrees(ext)})
    return config, config_algebra(config)


def _entries(config: RunConfig, algebra: AlgebraSpec, module_path: Optional[str],
             entry_id: Optional[str]) -> list[CatalogEntry]:
    if module_path:
        module = load_module(module_path)
        return [CatalogEntry(module_path, module, "user")]
    lambdas = parse_points(algebra, config.lambdas) if config.lambdas else None
    mus = parse_points(algebra, config.mus) if config.mus else None
    entries = build_catalog(algebra, lambdas, mus)
    if entry_id is None:
        return entries
    chosen = [e for e in entries if e.id == entry_id]
    if not chosen:
        raise click.BadParameter(f"no catalog entry {entry_id!r}; have {[e.id for e in entries]}", param_hint="--entry")
    return chosen


def _lambdas(config: RunConfig, algebra: AlgebraSpec, lam: Optional[str]):
    if lam:
        return [parse_point(algebra.field, algebra.c, lam)]
    return parse_points(algebra, config.lambdas) if config.lambdas else default_lambdas(algebra)


def _finish(config: RunConfig, algebra: AlgebraSpec, records: list[CheckRecord], out: Optional[str]):
    report = VerificationReport.assemble(CATALOG_VERSION, summarize(algebra, config), records)
    logger.info(f"{report.passed} passed, {report.failed} failed, {report.inconclusive} inconclusive")
    save_json(report, out)
    click.get_current_context().exit(report.exit_code)


def _per_entry(config: RunConfig, entries: list[CatalogEntry],
               run: Callable[[CatalogEntry, checks.ModuleData], CheckRecord]) -> list[CheckRecord]:
    records = []
    for entry in entries:
        data = checks.prepare(entry.module, config.ext_degrees, config.degree_bound, config.max_deg,
                              config.resolution_steps, threads=config.threads)
        records.append(run(entry, data))
    return records


@click.group("verify")
def verify_group():
    """Run checks of the rank/support variety correspondence; exit 0 pass, 1 fail, 3 inconclusive."""


@verify_group.command("avrunin-scott")
@config_option
@module_option
@entry_option
@ext_option
@out_option
@handle_errors
def avrunin_scott(config_path, module_path, entry_id, ext, out):
    """F(V^r(M)) = V_H(M) at every extension degree."""
    config, algebra = _load(config_path, ext)
    entries = _entries(config, algebra, module_path, entry_id)
    records = _per_entry(config, entries, lambda e, data: checks.verify_avrunin_scott(data, e.id))
    _finish(config, algebra, records, out)


@verify_group.command("stable-map")
@config_option
@module_option
@entry_option
@ext_option
@out_option
@handle_errors
def stable_map(config_path, module_path, entry_id, ext, out):
    """Rank-variety membership against stable Hom from A u and A u^{a-1}."""
    config, algebra = _load(config_path, ext)
    records = [
        checks.verify_stable_map(e.module, config.ext_degrees[0], e.id, threads=config.threads)
        for e in _entries(config, algebra, module_path, entry_id)
    ]
    _finish(config, algebra, records, out)


@verify_group.command("line")
@config_option
@lambda_option
@ext_option
@out_option
@handle_errors
def line(config_path, lam, ext, out):
    """V_H(A u_lambda) is the single point F(lambda)."""
    config, algebra = _load(config_path, ext)
    records = [
        checks.verify_line_variety(algebra, point, config.ext_degrees, config.degree_bound, config.max_deg,
                                   threads=config.threads)
        for point in _lambdas(config, algebra, lam)
    ]
    _finish(config, algebra, records, out)


@verify_group.command("syzygy")
@config_option
@lambda_option
@out_option
@handle_errors
def syzygy_pair(config_path, lam, out):
    """Omega(A u_lambda) = A u_lambda^{a-1} and back."""
    config, algebra = _load(config_path, None)
    records = [checks.verify_syzygy_pair(algebra, point) for point in _lambdas(config, algebra, lam)]
    _finish(config, algebra, records, out)


@verify_group.command("perp")
@config_option
@entry_option
@ext_option
@out_option
@handle_errors
def perp(config_path, entry_id, ext, out):
    """Nonzero stable Hom from a period-one module into K_zeta (x) k forces perpendicularity."""
    config, algebra = _load(config_path, ext)
    entries = _entries(config, algebra, None, entry_id)
    if entry_id is None:
        entries = [e for e in entries if e.period_one]
    records = [checks.verify_perp_lemma(e, config.ext_degrees[0]) for e in entries]
    _finish(config, algebra, records, out)


@verify_group.command("suite")
@config_option
@ext_option
@out_option
@handle_errors
def suite(config_path, ext, out):
    """Every check over the catalog, user modules and random modules."""
    config, algebra = _load(config_path, ext)
    report = run_suite(config, algebra)
    save_json(report, out or config.out)
    click.get_current_context().exit(report.exit_code)
