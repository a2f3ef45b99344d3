from typing import Optional

import numpy as np

from models.base import AlgebraMismatch
from models.field import Field
from models.points import ProjectivePointSet
from schemas.field import CamelModel, FieldSchema


class PointSetSchema(CamelModel):
    ext_degree: int
    c: int
    # each point is a list of c coefficient lists over the extension field
    points: list[list[list[int]]]
    enumerated: int
    field: Optional[FieldSchema] = None

    @classmethod
    def from_point_set(cls, points: ProjectivePointSet) -> "PointSetSchema":
        return cls(
            ext_degree=points.ext_degree,
            c=points.c,
            points=points.as_lists(),
            enumerated=points.enumerated,
            field=FieldSchema.from_field(points.field),
        )

    def to_point_set(self, field: Field) -> ProjectivePointSet:
        if any(len(x) != self.c or any(len(coef) != field.e for coef in x) for x in self.points):
            raise AlgebraMismatch(f"points do not fit P^{self.c - 1} over F_{field.order}")
        arr = np.asarray(self.points, dtype=np.int64).reshape(-1, self.c, field.e)
        return ProjectivePointSet.build(field, self.ext_degree, self.c, np.moveaxis(arr, 2, 0), self.enumerated)
