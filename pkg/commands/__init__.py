"""Shared plumbing for the click commands: error translation and option parsing."""

import functools
import logging

import click
import numpy as np
from pydantic import ValidationError as SchemaViolation

from models.base import InputError, InternalError
from models.field import Field

logger = logging.getLogger(__name__)


def handle_errors(fn):
    """Input problems exit with 2 and a one-line message; internal failures exit with 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputError as exc:
            logger.debug("Input error", exc_info=True)
            raise click.UsageError(str(exc))
        except SchemaViolation as exc:
            raise click.UsageError("; ".join(err["msg"] for err in exc.errors()))
        except InternalError as exc:
            logger.debug("Internal error", exc_info=True)
            raise click.ClickException(f"internal error: {exc}")

    return wrapper


def parse_ints(text: str, name: str = "value") -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}", param_hint=name)


def parse_degrees(text: str) -> list[int]:
    degrees = parse_ints(text, "--ext")
    if not degrees or any(d < 1 for d in degrees):
        raise click.BadParameter("extension degrees must be >= 1", param_hint="--ext")
    return sorted(set(degrees))


def parse_point(field: Field, c: int, text: str, name: str = "--lambda") -> np.ndarray:
    """A point given as c comma-separated element indices, as planes (e, c)."""
    indices = parse_ints(text, name)
    if len(indices) != c:
        raise click.BadParameter(f"expected {c} coordinates, got {len(indices)}", param_hint=name)
    if any(i < 0 or i >= field.order for i in indices):
        raise click.BadParameter(f"element indices must lie in [0, {field.order})", param_hint=name)
    return field.decode(np.array(indices, dtype=np.int64))
