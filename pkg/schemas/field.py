from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator
from pydantic.alias_generators import to_camel

from models.field import Field, make_field
from settings import default_modulus


class CamelModel(BaseModel):
    """Files use camelCase keys; Python code uses snake_case."""

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class FieldSchema(CamelModel):
    p: int
    e: int = 1
    modulus: Optional[list[int]] = None

    @field_validator("e")
    def degree_must_be_positive(cls, v):
        if v < 1:
            raise ValueError("extension degree e must be >= 1")
        return v

    @field_validator("p")
    def characteristic_must_be_positive(cls, v):
        if v < 2:
            raise ValueError("characteristic p must be >= 2")
        return v

    def to_field(self) -> Field:
        modulus = self.modulus if self.modulus is not None else default_modulus(self.p, self.e)
        return make_field(self.p, self.e, modulus)

    @classmethod
    def from_field(cls, field: Field) -> "FieldSchema":
        return cls(p=field.p, e=field.e, modulus=list(field.modulus))
