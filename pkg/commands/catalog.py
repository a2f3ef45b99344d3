from typing import Optional

import click

from commands import handle_errors
from settings import CATALOG_DIR
from storage import config_algebra, load_algebra, load_config
from verify.catalog import build_catalog, parse_points, write_catalog


@click.command("catalog")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--algebra", "algebra_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out-dir", default=None, help="Target directory (default: QCI_CATALOG_DIR).")
@handle_errors
def catalog_command(config_path: Optional[str], algebra_path: Optional[str], out_dir: Optional[str]):
    """Write the module catalog for an algebra as JSON files."""
    if (config_path is None) == (algebra_path is None):
        raise click.UsageError("give exactly one of --config and --algebra")
    lambdas = mus = None
    if config_path:
        config = load_config(config_path)
        algebra = config_algebra(config)
        lambdas = parse_points(algebra, config.lambdas) if config.lambdas else None
        mus = parse_points(algebra, config.mus) if config.mus else None
    else:
        algebra = load_algebra(algebra_path)
    index = write_catalog(algebra, build_catalog(algebra, lambdas, mus), out_dir or CATALOG_DIR)
    for item in index.entries:
        click.echo(f"{item.id}\t{item.kind}\tdim {item.dim}\t{item.file}")
