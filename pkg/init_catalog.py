"""Materialise the versioned catalog for the standard configurations under QCI_CATALOG_DIR."""

import logging
import os

from schemas.algebra import AlgebraSchema
from schemas.config import RunConfig
from schemas.field import FieldSchema
from settings import CATALOG_DIR
from storage import save_json
from verify.catalog import build_catalog, write_catalog

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

STANDARD = {
    "E1": AlgebraSchema(field=FieldSchema(p=2), a=2, c=2, q=[1]),
    "E2": AlgebraSchema(field=FieldSchema(p=5), a=2, c=2, q=[4]),
    "E3": AlgebraSchema(field=FieldSchema(p=7), a=3, c=2, q=[2]),
    "C3": AlgebraSchema(field=FieldSchema(p=5), a=2, c=3, q=[4]),
}


def write_standard(root: str = CATALOG_DIR):
    for name, schema in STANDARD.items():
        directory = os.path.join(root, name)
        algebra = schema.to_algebra()
        write_catalog(algebra, build_catalog(algebra), directory)
        save_json(schema, os.path.join(directory, "algebra.json"))
        config = RunConfig(algebra_path=os.path.abspath(os.path.join(directory, "algebra.json")))
        # relative paths resolve against the config file's directory
        save_json(config.model_copy(update={"algebra_path": "algebra.json"}), os.path.join(directory, "suite.json"))
        logger.info(f"Catalog for {name} written to {directory}")


if __name__ == "__main__":
    logger.info("Writing module catalogs...")
    write_standard()
    logger.info("Catalogs written successfully!")
