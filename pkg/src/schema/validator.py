"""
Validator for fringelab run configurations and profile file headers.

This module provides functions to validate both records against the JSON
schemas shipped next to it.
"""

import os
import json
from jsonschema import validate, ValidationError, SchemaError

# Paths to the schema files
RUN_CONFIG_SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "run_config_schema.json")
PROFILE_HEADER_SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "profile_header_schema.json")

_SCHEMAS = {}


def load_schema(path):
    """
    Load a JSON schema, reading each file once.

    Args:
        path: Path of the schema file

    Returns:
        The JSON schema as a dictionary
    """
    if path not in _SCHEMAS:
        with open(path, "r", encoding="utf-8") as f:
            _SCHEMAS[path] = json.load(f)
    return _SCHEMAS[path]


def _check(record, path):
    try:
        validate(instance=record, schema=load_schema(path))
        return True, []
    except ValidationError as e:
        location = ".".join(str(part) for part in e.absolute_path)
        prefix = f"{location}: " if location else ""
        return False, [f"Validation error: {prefix}{e.message}"]
    except SchemaError as e:
        return False, [f"Schema error: {e.message}"]


def validate_run_config(record):
    """
    Validate a run configuration record.

    Args:
        record: RunConfig.as_record() output

    Returns:
        A tuple (is_valid, errors) where:
        - is_valid is a boolean indicating whether the record is valid
        - errors is a list of validation error messages (empty if valid)
    """
    is_valid, errors = _check(record, RUN_CONFIG_SCHEMA_PATH)
    if not is_valid:
        return False, errors

    grid = record["grid"]
    if not grid["x_min"] < grid["x_max"]:
        errors.append(f"grid x_min ({grid['x_min']}) must be below x_max ({grid['x_max']})")
    if record.get("deco") is not None and not record["model"].startswith("quantum-"):
        errors.append(f"decoherence settings apply to quantum models only, not {record['model']}")
    return len(errors) == 0, errors


def validate_profile_header(header):
    """
    Validate the YAML header of a profile file.

    Args:
        header: The parsed header as a dictionary

    Returns:
        A tuple (is_valid, errors) where:
        - is_valid is a boolean indicating whether the header is valid
        - errors is a list of validation error messages (empty if valid)
    """
    if not isinstance(header, dict):
        return False, ["profile header must be a mapping"]
    is_valid, errors = _check(header, PROFILE_HEADER_SCHEMA_PATH)
    if is_valid and header["meta"].get("model", header["model"]) != header["model"]:
        errors.append("profile header model does not match meta.model")
    return len(errors) == 0, errors
