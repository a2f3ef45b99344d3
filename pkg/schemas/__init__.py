from .field import CamelModel, FieldSchema
from .algebra import AlgebraSchema, AlgElementSchema
from .module import ModuleSchema, ResolutionSchema
from .points import PointSetSchema
from .ideal import IdealSchema, PolynomialSchema, TermSchema
from .report import CheckRecord, CheckStatus, ConfigurationSummary, VerificationReport
from .config import RunConfig
from .catalog import CatalogIndex, CatalogItem

__all__ = [
    "CamelModel", "FieldSchema",
    "AlgebraSchema", "AlgElementSchema",
    "ModuleSchema", "ResolutionSchema",
    "PointSetSchema",
    "IdealSchema", "PolynomialSchema", "TermSchema",
    "CheckRecord", "CheckStatus", "ConfigurationSummary", "VerificationReport",
    "RunConfig",
    "CatalogIndex", "CatalogItem",
]
