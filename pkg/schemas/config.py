import os
from typing import Optional

from pydantic import field_validator, model_validator

from schemas.algebra import AlgebraSchema
from schemas.field import CamelModel


class RunConfig(CamelModel):
    algebra: Optional[AlgebraSchema] = None
    algebra_path: Optional[str] = None
    modules: list[str] = []
    ext_degrees: list[int] = [1, 2]
    resolution_steps: int = 10
    degree_bound: int = 8
    max_deg: Optional[int] = None
    # sampled points as lists of coefficient lists; empty means the catalog defaults
    lambdas: list[list[list[int]]] = []
    mus: list[list[list[int]]] = []
    periodicity_bound: int = 12
    random_modules: int = 0
    seed: int = 0
    threads: int = 0
    out: Optional[str] = None

    @field_validator("ext_degrees")
    def degrees_positive(cls, v):
        if not v or any(d < 1 for d in v):
            raise ValueError("extension degrees must be >= 1")
        return sorted(set(v))

    @field_validator("degree_bound")
    def bound_even(cls, v):
        if v < 0 or v % 2:
            raise ValueError("degree bound must be even and >= 0")
        return v

    @field_validator("resolution_steps")
    def enough_steps(cls, v):
        if v < 8:
            raise ValueError("complexity estimates need at least 8 resolution steps")
        return v

    @model_validator(mode="after")
    def consistent(self):
        if (self.algebra is None) == (self.algebra_path is None):
            raise ValueError("give exactly one of algebra and algebraPath")
        if self.max_deg is None:
            self.max_deg = self.degree_bound + 4
        if self.max_deg < self.degree_bound + 2:
            raise ValueError(f"maxDeg {self.max_deg} must be at least degreeBound + 2")
        missing = [p for p in self.modules + ([self.algebra_path] if self.algebra_path else []) if not os.path.exists(p)]
        if missing:
            raise ValueError(f"referenced files do not exist: {missing}")
        return self
