import logging
import os
from typing import Optional

import click

from commands import handle_errors, parse_degrees
from schemas.ideal import IdealSchema
from storage import load_algebra, load_ideal, load_module, save_json, save_points
from varieties.rank import TooFewLevels, dimension_estimate, scan_rank_variety
from varieties.support import annihilator_ideal, support_variety_points, z_action_matrices

logger = logging.getLogger(__name__)


def _level_path(out: Optional[str], degree: int, several: bool, tag: str = "") -> Optional[str]:
    if not out or not several:
        return out
    root, ext = os.path.splitext(out)
    middle = f".{tag}" if tag else ""
    return f"{root}{middle}.{degree}{ext or '.json'}"


@click.command("rank-variety")
@click.option("--module", "module_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--ext", "ext", default="1", show_default=True, help="Extension degrees, comma-separated.")
@click.option("--apply-f", "apply_power", is_flag=True, help="Map the points through the coordinatewise a-th power.")
@click.option("--threads", type=int, default=0, help="Parallel width (default: QCI_THREADS).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Output file; with several degrees each level gets a .<degree> suffix.")
@handle_errors
def rank_variety_command(module_path: str, ext: str, apply_power: bool, threads: int, out: Optional[str]):
    """Points of P^{c-1} at which the module is not free over k[u_lambda]."""
    module = load_module(module_path)
    degrees = parse_degrees(ext)
    sets = []
    for degree in degrees:
        scan = scan_rank_variety(module, degree, threads)
        points = scan.variety.map_power(module.algebra.a) if apply_power else scan.variety
        sets.append(scan.variety)
        save_points(points, _level_path(out, degree, len(degrees) > 1))
    if len(degrees) > 1:
        try:
            logger.info(f"Cone dimension estimate: {dimension_estimate(sets)}")
        except TooFewLevels as exc:
            logger.info(f"No dimension estimate: {exc}")


@click.command("support-variety")
@click.option("--module", "module_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--ideal", "ideal_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Reuse a saved annihilator ideal instead of a module.")
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Algebra supplying the field of an --ideal file that names none.")
@click.option("--maxdeg", type=int, default=None, help="Top Ext degree computed (default: bound + 4).")
@click.option("--bound", type=int, default=8, show_default=True, help="Even degree bound for the annihilator.")
@click.option("--points", "points_ext", default=None, help="Also write zero sets at these extension degrees.")
@click.option("--seed", type=int, default=None, help="Perturb every lift by random kernel elements.")
@click.option("--threads", type=int, default=0)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def support_variety_command(module_path: Optional[str], ideal_path: Optional[str], algebra_path: Optional[str],
                            maxdeg: Optional[int], bound: int, points_ext: Optional[str], seed: Optional[int],
                            threads: int, out: Optional[str]):
    """Annihilator ideal of Ext*(M, k) over k[z_1..z_c], and optionally its zero sets."""
    if (module_path is None) == (ideal_path is None):
        raise click.UsageError("give exactly one of --module and --ideal")
    if ideal_path:
        ideal = load_ideal(ideal_path, load_algebra(algebra_path) if algebra_path else None)
    else:
        module = load_module(module_path)
        data = z_action_matrices(module, maxdeg if maxdeg is not None else bound + 4, seed=seed, threads=threads)
        ideal = annihilator_ideal(data, bound)
        save_json(IdealSchema.from_ideal(ideal), out)
    if points_ext:
        for degree in parse_degrees(points_ext):
            save_points(support_variety_points(ideal, degree), _level_path(out, degree, True, "points"))
