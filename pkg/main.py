import logging
import os

import click

from commands.catalog import catalog_command
from commands.field import algebra_command, field_command
from commands.kzeta import kzeta_command, mono_command
from commands.module import betti, module_group, resolve
from commands.variety import rank_variety_command, support_variety_command
from commands.verify import verify_group

logger = logging.getLogger(__name__)


@click.group("qci")
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.option("--quiet", is_flag=True, help="Only log warnings and errors.")
@click.option("--threads", type=int, default=None, help="Parallel width (overrides QCI_THREADS).")
def cli(verbose: bool, quiet: bool, threads):
    """Quantum complete intersections: modules, rank and support varieties."""
    # Configure logging
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, force=True)
    if threads is not None:
        if threads < 1:
            raise click.BadParameter("must be >= 1", param_hint="--threads")
        os.environ["QCI_THREADS"] = str(threads)
    logger.debug(f"Logging at {logging.getLevelName(level)}, threads {os.getenv('QCI_THREADS', '1')}")


cli.add_command(field_command)
cli.add_command(algebra_command)
cli.add_command(module_group)
cli.add_command(resolve)
cli.add_command(betti)
cli.add_command(rank_variety_command)
cli.add_command(support_variety_command)
cli.add_command(kzeta_command)
cli.add_command(mono_command)
cli.add_command(verify_group)
cli.add_command(catalog_command)


if __name__ == "__main__":
    cli()
