"""Canonical JSON files for every artifact the tool reads or writes.

Output is compact, camelCase and key-ordered by schema field order, so
saving a loaded canonical file reproduces it byte for byte.
"""

import json
import logging
import os
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel
from pydantic import ValidationError as SchemaViolation

from models.algebra import AlgebraSpec
from models.base import AlgebraMismatch, InputError
from models.field import Field
from models.module import ModuleRep, ValidationError
from models.points import ProjectivePointSet
from schemas.algebra import AlgebraSchema
from schemas.config import RunConfig
from schemas.field import FieldSchema
from schemas.ideal import IdealSchema
from schemas.module import ModuleSchema
from schemas.points import PointSetSchema
from varieties.support import AnnihilatorIdeal

logger = logging.getLogger(__name__)

# Point sets larger than this are written as line-delimited records
STREAM_THRESHOLD = 10 ** 5

Schema = TypeVar("Schema", bound=BaseModel)


class ParseError(InputError):
    def __init__(self, path: str, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column


class InvalidConfig(InputError):
    pass


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.msg, exc.lineno, exc.colno) from exc


def _violations(exc: SchemaViolation) -> list[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()]


def parse_model(path: str, schema: Type[Schema], data: Any = None) -> Schema:
    data = read_json(path) if data is None else data
    try:
        return schema.model_validate(data)
    except SchemaViolation as exc:
        raise ValidationError(_violations(exc)) from exc


def dumps(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, exclude_none=True)


def save_json(model: BaseModel, path: Optional[str]) -> str:
    """Write the canonical encoding to `path` (stdout when path is None or '-')."""
    text = dumps(model)
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info(f"Wrote {path}")
    else:
        print(text)
    return text


def load_algebra(path: str) -> AlgebraSpec:
    return parse_model(path, AlgebraSchema).to_algebra()


def load_module(path: str, check: bool = True) -> ModuleRep:
    module = parse_model(path, ModuleSchema).to_module(check=check)
    logger.debug(f"Loaded module of dimension {module.d} from {path}")
    return module


def save_module(module: ModuleRep, path: Optional[str]) -> str:
    return save_json(ModuleSchema.from_module(module), path)


def _resolve_field(path: str, schema: Optional[FieldSchema], algebra: Optional[AlgebraSpec], degree: int = 1) -> Field:
    if schema is not None:
        field = schema.to_field()
        if algebra is not None and field.p != algebra.field.p:
            raise AlgebraMismatch(f"{path}: characteristic {field.p} differs from the algebra's {algebra.field.p}")
        return field
    if algebra is None:
        raise InvalidConfig(f"{path} names no field; pass the algebra it belongs to")
    return algebra.field.extend(degree).field


def load_ideal(path: str, algebra: Optional[AlgebraSpec] = None) -> AnnihilatorIdeal:
    """Load a saved annihilator ideal; files without a field take it from `algebra`."""
    schema = parse_model(path, IdealSchema)
    field = _resolve_field(path, schema.field, algebra)
    c = schema.variable_count()
    if c is None:
        c = algebra.c if algebra is not None else None
    if c is None:
        raise InvalidConfig(f"{path}: cannot tell the number of variables of an empty ideal")
    if algebra is not None and c != algebra.c:
        raise AlgebraMismatch(f"{path}: ideal in {c} variables, algebra has c = {algebra.c}")
    return schema.to_ideal(field, c)


def save_points(points: ProjectivePointSet, path: Optional[str]) -> str:
    schema = PointSetSchema.from_point_set(points)
    if len(points) <= STREAM_THRESHOLD or not path or path == "-":
        return save_json(schema, path)
    header = schema.model_dump(by_alias=True, exclude_none=True, exclude={"points"})
    header["count"] = len(points)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps(header, separators=(",", ":")) + "\n")
        for point in schema.points:
            handle.write(json.dumps(point, separators=(",", ":")) + "\n")
    logger.info(f"Streamed {len(points)} points to {path}")
    return path


def load_points(path: str, algebra: Optional[AlgebraSpec] = None) -> ProjectivePointSet:
    try:
        data = read_json(path)
    except ParseError as exc:
        if exc.line < 2:
            raise
        data = _read_point_stream(path)
    schema = parse_model(path, PointSetSchema, data)
    return schema.to_point_set(_resolve_field(path, schema.field, algebra, schema.ext_degree))


def _read_point_stream(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line for line in handle if line.strip()]
    try:
        header = json.loads(lines[0])
        header["points"] = [json.loads(line) for line in lines[1:]]
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.msg, exc.lineno, exc.colno) from exc
    if header.pop("count", len(header["points"])) != len(header["points"]):
        raise ParseError(path, "point stream is truncated")
    return header


def load_config(path: str) -> RunConfig:
    data = read_json(path)
    if not isinstance(data, dict):
        raise InvalidConfig(f"{path}: configuration must be a JSON object")
    base = os.path.dirname(os.path.abspath(path))

    def resolve(entry):
        return entry if not isinstance(entry, str) or os.path.isabs(entry) else os.path.join(base, entry)

    if "modules" in data and isinstance(data["modules"], list):
        data["modules"] = [resolve(m) for m in data["modules"]]
    if "algebraPath" in data:
        data["algebraPath"] = resolve(data["algebraPath"])
    try:
        return RunConfig.model_validate(data)
    except SchemaViolation as exc:
        raise InvalidConfig("; ".join(_violations(exc))) from exc


def config_algebra(config: RunConfig) -> AlgebraSpec:
    if config.algebra is not None:
        return config.algebra.to_algebra()
    return load_algebra(config.algebra_path)