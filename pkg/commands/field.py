import logging
from typing import Optional

import click

from commands import handle_errors, parse_ints
from models.field import a_prime_discrepancy, compute_a_prime, literal_a_prime, primitive_root_of_unity
from schemas.algebra import AlgebraSchema
from schemas.field import FieldSchema
from storage import save_json

logger = logging.getLogger(__name__)


@click.command("field")
@click.option("--p", "p", type=int, required=True, help="Characteristic.")
@click.option("--e", "e", type=int, default=1, show_default=True, help="Extension degree over F_p.")
@click.option("--modulus", default=None, help="Monic modulus coefficients, constant first (e.g. 2,0,1).")
@click.option("--root", "root", type=int, default=None, help="Also print the first primitive root of this order.")
@handle_errors
def field_command(p: int, e: int, modulus: Optional[str], root: Optional[int]):
    """Print the canonical description of F_{p^e}."""
    schema = FieldSchema(p=p, e=e, modulus=parse_ints(modulus, "--modulus") if modulus else None)
    field = schema.to_field()
    save_json(FieldSchema.from_field(field), None)
    if root is not None:
        click.echo(primitive_root_of_unity(field, root).to_json())


@click.command("algebra")
@click.option("--p", "p", type=int, required=True)
@click.option("--e", "e", type=int, default=1, show_default=True)
@click.option("--a", "a", type=int, required=True, help="Nilpotency exponent of each generator.")
@click.option("--c", "c", type=int, required=True, help="Number of generators.")
@click.option("--q", "q", default=None, help="Coefficients of q (default: first primitive a'-th root of unity).")
@click.option("--labels", is_flag=True, help="List the PBW basis labels.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def algebra_command(p: int, e: int, a: int, c: int, q: Optional[str], labels: bool, out: Optional[str]):
    """Describe the quantum complete intersection A^c_q over F_{p^e}."""
    schema = AlgebraSchema(field=FieldSchema(p=p, e=e), a=a, c=c, q=parse_ints(q, "--q") if q else None)
    algebra = schema.to_algebra()
    if a_prime_discrepancy(a, p):
        logger.warning(
            f"a/gcd(a,p) = {literal_a_prime(a, p)} but q must have order {compute_a_prime(a, p).a_prime}"
        )
    save_json(AlgebraSchema.from_algebra(algebra), out)
    if labels:
        click.echo(" ".join(algebra.labels))
