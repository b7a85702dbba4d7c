"""JSON Schemas for the sensor, basis, matrix-metadata and config files."""

from typing import Any, Dict

import jsonschema
from jsonschema import ValidationError

from sparsense.core.errors import SchemaViolation

_NULLABLE_INT = {"type": ["integer", "null"]}
_FLOAT_LIST = {"type": "array", "items": {"type": "number"}}

SENSORS_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["format", "indices", "n", "method", "r"],
    "properties": {
        "format": {"type": "string"},
        "indices": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "n": {"type": "integer", "minimum": 1},
        "method": {"enum": ["qr", "qr_oversampled", "deim", "random", "brute_force"]},
        "r": {"type": "integer", "minimum": 0},
        "seed": _NULLABLE_INT,
        "generator": {"type": ["string", "null"]},
        "criterion": {"enum": ["d_optimal", "a_optimal", "e_optimal", "condition", None]},
    },
}

BASIS_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["format", "source", "n", "r", "sigmas"],
    "properties": {
        "format": {"type": "string"},
        "source": {"enum": ["pod", "vandermonde"]},
        "n": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 1},
        "sigmas": _FLOAT_LIST,
        "spectrum": {"anyOf": [_FLOAT_LIST, {"type": "null"}]},
        "mean": {"anyOf": [_FLOAT_LIST, {"type": "null"}]},
        "grid": {"anyOf": [_FLOAT_LIST, {"type": "null"}]},
        "energy_fraction": {"type": ["number", "null"]},
    },
}

MATRIX_META_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["format"],
    "properties": {
        "format": {"type": "string"},
        "grid": {
            "anyOf": [
                {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
                {"type": "null"},
            ]
        },
        "mean": {"anyOf": [_FLOAT_LIST, {"type": "null"}]},
    },
}

CONFIG_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "defaults": {"type": "object"},
        "settings": {"type": "object"},
    },
}


def check_document(document: Any, schema: Dict[str, Any], source: str) -> None:
    """Validate ``document`` against ``schema``, raising ``SchemaViolation``."""
    try:
        jsonschema.validate(document, schema, cls=jsonschema.Draft7Validator)
    except ValidationError as e:
        where = "/".join(str(part) for part in e.absolute_path) or "<root>"
        raise SchemaViolation(f"{source}: {where}: {e.message}") from e
