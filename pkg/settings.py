import logging
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

from models.field import ExtensionUnavailable, first_irreducible

logger = logging.getLogger(__name__)

# Catalog location - environment variable with a repo-relative fallback
CATALOG_DIR = os.getenv("QCI_CATALOG_DIR", "catalog")

# Largest field the default modulus rule is applied to
MAX_DEFAULT_ORDER = 2 ** 20

# Precomputed entries of the first-irreducible rule below
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


def thread_count() -> int:
    """Parallel width from QCI_THREADS (read on every call so --threads can override it)."""
    raw = os.getenv("QCI_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning(f"Ignoring non-integer QCI_THREADS={raw!r}")
        return 1


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Modulus used for F_{p^n} when none is supplied.

    The rule is: the first monic irreducible polynomial of degree n over F_p
    in enumeration order, constant coefficient varying fastest.
    """
    if n == 1:
        return (0, 1)
    if (p, n) in DEFAULT_MODULI:
        modulus = DEFAULT_MODULI[(p, n)]
    elif p ** n <= MAX_DEFAULT_ORDER:
        modulus = first_irreducible(p, n)
    else:
        raise ExtensionUnavailable(
            f"no default modulus for F_{p}^{n} (order exceeds {MAX_DEFAULT_ORDER}); supply one explicitly"
        )
    logger.info(f"Using default modulus {list(modulus)} for F_{p}^{n}")
    return modulus


class InlineExecutor:
    """Executor stand-in for width 1: runs the map in the calling thread."""

    def map(self, fn, *iterables):
        return map(fn, *iterables)


@contextmanager
def get_pool(threads: int = 0):
    width = threads or thread_count()
    if width <= 1:
        yield InlineExecutor()
        return
    pool = ThreadPoolExecutor(max_workers=width)
    try:
        yield pool
    finally:
        pool.shutdown()
