from typing import Optional

from pydantic import field_validator

from models.algebra import AlgebraSpec, AlgElement, make_algebra
from models.field import compute_a_prime, primitive_root_of_unity
from schemas.field import CamelModel, FieldSchema


class AlgebraSchema(CamelModel):
    field: FieldSchema
    a: int
    c: int
    # defaults to the first primitive a'-th root of unity
    q: Optional[list[int]] = None

    @field_validator("a")
    def exponent_at_least_two(cls, v):
        if v < 2:
            raise ValueError("exponent a must be >= 2")
        return v

    @field_validator("c")
    def generators_at_least_one(cls, v):
        if v < 1:
            raise ValueError("generator count c must be >= 1")
        return v

    def to_algebra(self) -> AlgebraSpec:
        field = self.field.to_field()
        q = self.q
        if q is None:
            q = primitive_root_of_unity(field, compute_a_prime(self.a, field.p).a_prime)
        return make_algebra(field, self.a, self.c, q)

    @classmethod
    def from_algebra(cls, algebra: AlgebraSpec) -> "AlgebraSchema":
        return cls(field=FieldSchema.from_field(algebra.field), a=algebra.a, c=algebra.c, q=algebra.q.to_json())


class AlgElementSchema(CamelModel):
    algebra: AlgebraSchema
    coeffs: list[list[int]]
    labels: Optional[list[str]] = None

    @classmethod
    def from_element(cls, u: AlgElement) -> "AlgElementSchema":
        return cls(algebra=AlgebraSchema.from_algebra(u.algebra), coeffs=u.to_json(), labels=u.algebra.labels)
