from schemas.algebra import AlgebraSchema
from schemas.field import CamelModel


class CatalogItem(CamelModel):
    id: str
    file: str
    kind: str
    dim: int
    indecomposable: bool
    period_one: bool


class CatalogIndex(CamelModel):
    catalog_version: int
    algebra: AlgebraSchema
    entries: list[CatalogItem]
