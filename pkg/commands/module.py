import json
import logging
from typing import Optional

import click
import numpy as np

from commands import handle_errors, parse_point
from models.algebra import u_lambda
from models.base import InputError
from models.module import free_module, left_ideal_module, random_module, regular_module, simple_module
from models.resolution import complexity_estimate, minimal_resolution
from schemas.module import ResolutionSchema
from storage import load_algebra, load_module, save_json, save_module

logger = logging.getLogger(__name__)


@click.group("module")
def module_group():
    """Build and check module files."""


@module_group.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def validate(path: str):
    """Check the relations X_i^a = 0 and X_i X_j = q X_j X_i."""
    module = load_module(path)
    click.echo(f"ok: module of dimension {module.d}, top dimension {module.top_dimension()}")


@module_group.command("regular")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--rank", type=int, default=1, show_default=True, help="Build A^rank.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def regular(algebra_path: str, rank: int, out: Optional[str]):
    if rank < 0:
        raise InputError(f"rank must be >= 0, got {rank}")
    algebra = load_algebra(algebra_path)
    save_module(regular_module(algebra) if rank == 1 else free_module(algebra, rank), out)


@module_group.command("simple")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def simple(algebra_path: str, out: Optional[str]):
    save_module(simple_module(load_algebra(algebra_path)), out)


@module_group.command("ideal")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--lambda", "lam", required=True, help="Point as comma-separated element indices.")
@click.option("--power", type=int, default=1, show_default=True, help="Generate by u_lambda^power.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def ideal(algebra_path: str, lam: str, power: int, out: Optional[str]):
    """The left ideal A u_lambda^power."""
    algebra = load_algebra(algebra_path)
    point = parse_point(algebra.field, algebra.c, lam)
    module, _ = left_ideal_module(algebra, u_lambda(algebra, list(point.T)) ** power)
    save_module(module, out)


@module_group.command("random")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--kind", type=click.Choice(["sub", "quotient"]), default=None)
@click.option("--rank", type=int, default=None, help="Rank of the ambient free module.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def random(algebra_path: str, seed: int, kind: Optional[str], rank: Optional[int], out: Optional[str]):
    """A submodule or quotient of a free module generated by random radical elements."""
    algebra = load_algebra(algebra_path)
    save_module(random_module(algebra, np.random.default_rng(seed), rank=rank, kind=kind), out)


@click.command("resolve")
@click.option("--module", "module_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--steps", type=int, default=4, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def resolve(module_path: str, steps: int, out: Optional[str]):
    """Minimal free resolution, with its self-check results."""
    res = minimal_resolution(load_module(module_path), steps)
    problems = res.verify()
    if problems:
        logger.error(f"Resolution check failed: {problems}")
    save_json(ResolutionSchema.from_resolution(res, problems or None), out)
    if problems:
        raise click.ClickException("resolution failed its self-check")


@click.command("betti")
@click.option("--module", "module_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--steps", type=int, default=10, show_default=True)
@click.option("--complexity", is_flag=True, help="Also estimate the complexity (needs at least 8 numbers).")
@handle_errors
def betti(module_path: str, steps: int, complexity: bool):
    res = minimal_resolution(load_module(module_path), steps)
    out = {"betti": res.betti}
    if complexity:
        out["complexity"] = complexity_estimate(res.betti)
    click.echo(json.dumps(out, separators=(",", ":")))
