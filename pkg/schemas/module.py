from typing import Optional

import numpy as np
from pydantic import model_validator

from models.module import ModuleRep, make_module
from models.resolution import Resolution
from schemas.algebra import AlgebraSchema
from schemas.field import CamelModel


class ModuleSchema(CamelModel):
    algebra: AlgebraSchema
    dim: int
    # matrices[i][r][s] is entry (r, s) of X_{i+1}, an e-coefficient list
    matrices: list[list[list[list[int]]]]

    @model_validator(mode="after")
    def shapes_match(self):
        if len(self.matrices) != self.algebra.c:
            raise ValueError(f"expected {self.algebra.c} matrices, got {len(self.matrices)}")
        for i, mat in enumerate(self.matrices):
            if len(mat) != self.dim or any(len(row) != self.dim for row in mat):
                raise ValueError(f"matrix X{i + 1} is not {self.dim}x{self.dim}")
        return self

    def to_module(self, check: bool = True) -> ModuleRep:
        algebra = self.algebra.to_algebra()
        e = algebra.field.e
        arr = np.asarray(self.matrices, dtype=np.int64).reshape(algebra.c, self.dim, self.dim, e)
        return make_module(algebra, np.moveaxis(arr, 3, 0), check=check)

    @classmethod
    def from_module(cls, module: ModuleRep) -> "ModuleSchema":
        return cls(
            algebra=AlgebraSchema.from_algebra(module.algebra),
            dim=module.d,
            matrices=np.moveaxis(module.matrices, 0, 3).tolist(),
        )


class ResolutionSchema(CamelModel):
    algebra: AlgebraSchema
    module_dim: int
    betti: list[int]
    # differentials[n-1][i][j] is the algebra element in row i, column j of d_n
    differentials: list[list[list[list[list[int]]]]]
    augmentation: list[list[list[int]]]
    problems: Optional[list[str]] = None

    @classmethod
    def from_resolution(cls, res: Resolution, problems: Optional[list[str]] = None) -> "ResolutionSchema":
        return cls(
            algebra=AlgebraSchema.from_algebra(res.algebra),
            module_dim=res.module.d,
            betti=res.betti,
            differentials=[np.moveaxis(entries, 0, 3).tolist() for entries in res.entries],
            augmentation=np.moveaxis(res.augmentation, 0, 2).tolist(),
            problems=problems,
        )
