import json
from typing import Optional

import click
import numpy as np

from commands import handle_errors, parse_point
from storage import load_algebra, save_module
from varieties.kzeta import explicit_monomorphism, k_zeta_pullback


@click.command("kzeta")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--mu", required=True, help="Coefficients of zeta = sum mu_i z_i as element indices.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def kzeta_command(algebra_path: str, mu: str, out: Optional[str]):
    """The pullback module K_zeta (x)_A k."""
    algebra = load_algebra(algebra_path)
    kzeta = k_zeta_pullback(algebra, parse_point(algebra.field, algebra.c, mu, "--mu"))
    if not kzeta.sequence_exact():
        raise click.ClickException("0 -> k -> K -> rad A -> 0 is not exact")
    save_module(kzeta.module, out)


@click.command("mono")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--lambda", "lam", required=True)
@click.option("--mu", required=True)
@handle_errors
def mono_command(algebra_path: str, lam: str, mu: str):
    """The monomorphism A u_lambda -> K_zeta (x) k for perpendicular lambda and mu."""
    algebra = load_algebra(algebra_path)
    field, c = algebra.field, algebra.c
    mono = explicit_monomorphism(algebra, parse_point(field, c, lam), parse_point(field, c, mu, "--mu"))
    out = {
        "sourceDim": mono.source.d,
        "targetDim": mono.target.module.d,
        "injective": mono.injective,
        "aLinear": mono.a_linear,
        "matrix": np.moveaxis(mono.matrix, 0, 2).tolist(),
    }
    click.echo(json.dumps(out, separators=(",", ":")))
