"""The fixed, versioned module catalog the verification suite runs over."""

import logging
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from models.algebra import AlgebraSpec, u_lambda
from models.base import AlgebraMismatch
from models.module import (
    ModuleRep,
    direct_sum,
    left_ideal_module,
    random_module,
    regular_module,
    simple_module,
)
from models.points import normalize
from models.resolution import syzygy
from schemas.algebra import AlgebraSchema
from schemas.catalog import CatalogIndex, CatalogItem
from storage import load_module, save_json, save_module
from varieties.kzeta import k_zeta_tensor_simple
from varieties.rank import apply_f

logger = logging.getLogger(__name__)

# Bump whenever an entry is added, removed or built differently
CATALOG_VERSION = 1

SYZYGY_DEPTH = 3


@dataclass
class CatalogEntry:
    id: str
    module: ModuleRep
    kind: str
    # lambda of a cyclic ideal A u_lambda or mu of K_zeta (x) k, as planes (e, c)
    point: Optional[np.ndarray] = None
    indecomposable: bool = False
    # alpha with V_H(M) the single line through alpha, for periodic entries
    periodic_line: Optional[np.ndarray] = None
    period_one: bool = False


def point_label(algebra: AlgebraSpec, point: np.ndarray) -> str:
    indices = algebra.field.encode(point)
    return ",".join(str(int(i)) for i in indices)


def default_lambdas(algebra: AlgebraSpec) -> list[np.ndarray]:
    """e_1, e_c and the all-ones point (merged when c = 1)."""
    field, c = algebra.field, algebra.c
    out = []
    for ints in ([1] + [0] * (c - 1), [0] * (c - 1) + [1], [1] * c):
        point = field.from_ints(ints)
        if not any(np.array_equal(point, p) for p in out):
            out.append(point)
    return out


def default_mus(algebra: AlgebraSpec) -> list[np.ndarray]:
    field, c = algebra.field, algebra.c
    out = [field.from_ints([1] + [0] * (c - 1))]
    if c > 1:
        out.append(field.from_ints([1] * c))
    return out


def parse_points(algebra: AlgebraSpec, raw: Sequence) -> list[np.ndarray]:
    """Points given in the file encoding: c coefficient lists each."""
    e = algebra.field.e
    return [np.asarray(p, dtype=np.int64).reshape(algebra.c, e).T % algebra.field.p for p in raw]


def _line_of(algebra: AlgebraSpec, lam: np.ndarray) -> np.ndarray:
    image = apply_f(lam, algebra.a, field=algebra.field)
    return normalize(algebra.field, image[:, None, :])[:, 0, :]


def ideal_entries(algebra: AlgebraSpec, lam: np.ndarray) -> tuple[CatalogEntry, ModuleRep]:
    u = u_lambda(algebra, list(lam.T))
    au = left_ideal_module(algebra, u)[0]
    au_pow = left_ideal_module(algebra, u ** (algebra.a - 1))[0]
    entry = CatalogEntry(
        id=f"Au[{point_label(algebra, lam)}]",
        module=au,
        kind="ideal",
        point=lam,
        indecomposable=True,
        periodic_line=_line_of(algebra, lam),
        # Omega(A u) = A u^{a-1}, so A u is its own syzygy when a = 2
        period_one=algebra.a == 2,
    )
    return entry, au_pow


def build_catalog(algebra: AlgebraSpec, lambdas: Optional[list[np.ndarray]] = None,
                  mus: Optional[list[np.ndarray]] = None) -> list[CatalogEntry]:
    lambdas = lambdas or default_lambdas(algebra)
    mus = mus or default_mus(algebra)
    k = simple_module(algebra)
    entries = [
        CatalogEntry("k", k, "simple", indecomposable=True),
        CatalogEntry("A", regular_module(algebra), "regular", indecomposable=True),
    ]
    ideals = [ideal_entries(algebra, lam) for lam in lambdas]
    entries.extend(entry for entry, _ in ideals)
    current = k
    for n in range(1, SYZYGY_DEPTH + 1):
        current = syzygy(current)
        entries.append(CatalogEntry(f"Omega{n}(k)", current, "syzygy", indecomposable=True))
    for mu in mus:
        entries.append(
            CatalogEntry(f"K[{point_label(algebra, mu)}]k", k_zeta_tensor_simple(algebra, mu), "kzeta", point=mu)
        )
    first, first_pow = ideals[0]
    entries.append(CatalogEntry(f"k+{first.id}", direct_sum(k, first.module), "sum"))
    entries.append(
        CatalogEntry(
            f"T[{point_label(algebra, first.point)}]",
            direct_sum(first.module, first_pow),
            "sum",
            point=first.point,
            periodic_line=first.periodic_line,
            period_one=True,
        )
    )
    logger.info(f"Catalog v{CATALOG_VERSION}: {len(entries)} modules over {algebra}")
    return entries


def user_entries(paths: Sequence[str], algebra: AlgebraSpec) -> list[CatalogEntry]:
    entries = []
    for path in paths:
        module = load_module(path)
        if module.algebra != algebra:
            raise AlgebraMismatch(f"{path} is a module over {module.algebra}, expected {algebra}")
        entries.append(CatalogEntry(os.path.basename(path), module, "user"))
    return entries


def random_entries(algebra: AlgebraSpec, count: int, seed: int) -> list[CatalogEntry]:
    rng = np.random.default_rng(seed)
    return [CatalogEntry(f"random{n}", random_module(algebra, rng), "random") for n in range(count)]


def file_name(entry_id: str) -> str:
    safe = "".join(ch if ch.isalnum() else "_" for ch in entry_id).strip("_")
    return f"{safe}.json"


def write_catalog(algebra: AlgebraSpec, entries: Sequence[CatalogEntry], directory: str) -> CatalogIndex:
    """One module file per entry plus index.json."""
    os.makedirs(directory, exist_ok=True)
    items = []
    for entry in entries:
        name = file_name(entry.id)
        save_module(entry.module, os.path.join(directory, name))
        items.append(CatalogItem(
            id=entry.id,
            file=name,
            kind=entry.kind,
            dim=entry.module.d,
            indecomposable=entry.indecomposable,
            period_one=entry.period_one,
        ))
    index = CatalogIndex(
        catalog_version=CATALOG_VERSION, algebra=AlgebraSchema.from_algebra(algebra), entries=items
    )
    save_json(index, os.path.join(directory, "index.json"))
    return index
