from .base import QCIError, InputError, InternalError, InconsistentSystem, AlgebraMismatch, ZeroPoint
from .field import Field, FieldElement, FieldExtension, make_field, compute_a_prime, primitive_root_of_unity
from .algebra import AlgebraSpec, AlgElement, make_algebra, u_lambda
from .module import ModuleRep, ValidationError, make_module, regular_module, simple_module, direct_sum
from .points import ProjectivePointSet

__all__ = ["QCIError", "InputError", "InternalError", "InconsistentSystem", "AlgebraMismatch", "ZeroPoint",
           "Field", "FieldElement", "FieldExtension", "make_field", "compute_a_prime", "primitive_root_of_unity",
           "AlgebraSpec", "AlgElement", "make_algebra", "u_lambda",
           "ModuleRep", "ValidationError", "make_module", "regular_module", "simple_module", "direct_sum",
           "ProjectivePointSet"]
