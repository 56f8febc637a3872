import logging
from functools import lru_cache
from typing import Any, Dict

import jsonschema
from pydantic.json_schema import models_json_schema

from cli.reports import REPORT_MODELS

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('data.schemas')

SCHEMA_DIALECT = "https://json-schema.org/draft/2020-12/schema"


@lru_cache(maxsize=None)
def load_schemas() -> Dict[str, Any]:
    """
    The published report schema, generated from the report models.

    Each report kind is a definition of its own; nested models (terms, moves,
    seeds, scalings) keep their class names.

    Returns:
        A schema document with a "definitions" entry per report kind
    """
    _, document = models_json_schema([(model, "serialization") for model in REPORT_MODELS.values()],
                                     ref_template="#/definitions/{model}")
    definitions = document.get("$defs", {})
    for kind, model in REPORT_MODELS.items():
        definitions[kind] = definitions.pop(model.__name__)
    logger.debug(f"Generated schemas for {len(REPORT_MODELS)} report kinds")
    return {"$schema": SCHEMA_DIALECT, "title": "pf report", "definitions": definitions}


def schema_for(kind: str) -> Dict[str, Any]:
    """
    Standalone schema for one report kind.

    Args:
        kind: Report kind, e.g. "series"

    Returns:
        A JSON schema that resolves the shared definitions
    """
    schemas = load_schemas()
    if kind not in REPORT_MODELS:
        raise KeyError(f"No published schema for report kind {kind!r}")
    return {"$schema": SCHEMA_DIALECT, "$ref": f"#/definitions/{kind}", "definitions": schemas["definitions"]}


def validate_report(payload: Dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError unless payload matches its kind's schema."""
    kind = payload.get("kind")
    try:
        jsonschema.validate(instance=payload, schema=schema_for(kind))
    except jsonschema.ValidationError as e:
        logger.error(f"Error validating {kind} report: {e.message}")
        raise
