# adiabat: entropy from the adiabatic accessibility order.
# Licensed under the GPL-3.0; see pyproject.toml.

import jsonschema

from .axioms import AXIOMS

__all__ = [
    "STATE_SCHEMA",

    "RELATION_SCHEMA",
    "relation_validator",

    "AXIOM_REPORT_SCHEMA",
    "axiom_report_validator",
]

_ID_PAIR = {
    "type": "array",
    "items": {"type": "string"},
    "minItems": 2,
    "maxItems": 2,
}

STATE_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "required": ["system", "amount", "coords"],
        "properties": {
            "system": {"type": "string"},
            "amount": {"type": "number", "exclusiveMinimum": 0},
            "coords": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 1,
            },
        },
        "additionalProperties": False,
    },
}

RELATION_SCHEMA = {
    "type": "object",
    "required": ["atoms", "states"],
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "properties": {
                    "id": {"type": "string"},
                    "system": {"type": "string"},
                },
            },
        },
        "states": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "parts"],
                "properties": {
                    "id": {"type": "string"},
                    "parts": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["atom", "weight"],
                            "properties": {
                                "atom": {"type": "string"},
                                "weight": {"type": "number", "exclusiveMinimum": 0},
                            },
                        },
                    },
                },
            },
        },
        "precedes": {
            "type": "array",
            "items": _ID_PAIR,
        },
        "absent": {
            "type": "array",
            "items": _ID_PAIR,
        },
        "classes": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "string"},
                "minItems": 1,
            },
        },
    },
}

relation_validator = jsonschema.Draft7Validator(RELATION_SCHEMA)

AXIOM_REPORT_SCHEMA = {
    "type": "object",
    "required": ["axiom", "instances_tested", "passed", "witnesses"],
    "properties": {
        "axiom": {"enum": list(AXIOMS)},
        "instances_tested": {"type": "integer", "minimum": 0},
        "passed": {"type": "boolean"},
        "witnesses": {
            "type": "array",
            "items": {
                "type": "array",
                "items": STATE_SCHEMA,
            },
        },
    },
    "additionalProperties": False,
}

axiom_report_validator = jsonschema.Draft7Validator(AXIOM_REPORT_SCHEMA)
