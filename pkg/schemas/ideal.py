from typing import Optional

import numpy as np

from models.base import AlgebraMismatch
from models.field import Field
from schemas.field import CamelModel, FieldSchema
from varieties.support import AnnihilatorIdeal, Polynomial


class TermSchema(CamelModel):
    exps: list[int]
    coeff: list[int]


class PolynomialSchema(CamelModel):
    monomials: list[TermSchema]


class IdealSchema(CamelModel):
    degree_bound: int
    effective_bound: Optional[int] = None
    stabilized: bool
    generator_degrees: list[int] = []
    generators: list[PolynomialSchema]
    c: Optional[int] = None
    field: Optional[FieldSchema] = None

    @classmethod
    def from_ideal(cls, ideal: AnnihilatorIdeal) -> "IdealSchema":
        generators = [
            PolynomialSchema(monomials=[TermSchema(exps=list(exps), coeff=coef.to_json())
                                        for exps, coef in poly.terms(ideal.field)])
            for poly in ideal.generators
        ]
        return cls(
            degree_bound=ideal.degree_bound,
            effective_bound=ideal.effective_bound,
            stabilized=ideal.stabilized,
            generator_degrees=ideal.generator_degrees,
            generators=generators,
            c=ideal.c,
            field=FieldSchema.from_field(ideal.field),
        )

    def variable_count(self) -> Optional[int]:
        if self.c is not None:
            return self.c
        for gen in self.generators:
            for term in gen.monomials:
                return len(term.exps)
        return None

    def to_ideal(self, field: Field, c: int) -> AnnihilatorIdeal:
        """Build the ideal over `field`, which the caller resolves when the file carries none."""
        if any(len(t.coeff) != field.e or len(t.exps) != c for g in self.generators for t in g.monomials):
            raise AlgebraMismatch(f"ideal terms do not fit {c} variables over F_{field.order}")
        polys = []
        for gen in self.generators:
            exps = [tuple(t.exps) for t in gen.monomials]
            coeffs = np.asarray([t.coeff for t in gen.monomials], dtype=np.int64).reshape(-1, field.e).T
            polys.append(Polynomial(exps, coeffs))
        effective = self.effective_bound if self.effective_bound is not None else self.degree_bound
        degrees = self.generator_degrees or [p.degree for p in polys]
        return AnnihilatorIdeal(
            field, c, self.degree_bound, effective, self.stabilized, degrees, polys
        )
