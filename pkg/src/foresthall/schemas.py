"""JSON schemas for everything the command line can emit.

The test suite validates CLI output against these; they are the wire
contract for scripting consumers.
"""

from __future__ import annotations

_COEFF = {"type": "string", "pattern": r"^-?[0-9]+(/[1-9][0-9]*)?$"}
_FOREST = {"type": "string", "minLength": 1}
_INDEX = {"type": "integer", "minimum": 0}

ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["family", "terms"],
    "properties": {
        "family": {"type": "string"},
        "connected": {"type": "boolean"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["forest", "coeff"],
                "properties": {"forest": _FOREST, "coeff": _COEFF},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

TENSOR_SCHEMA = {
    "type": "object",
    "required": ["family", "terms"],
    "properties": {
        "family": {"type": "string"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["left", "right", "coeff"],
                "properties": {"left": _FOREST, "right": _FOREST, "coeff": _COEFF},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

MORPHISM_SCHEMA = {
    "type": "object",
    "required": ["source", "target", "I1", "I2", "map"],
    "properties": {
        "source": _FOREST,
        "target": _FOREST,
        "I1": {"type": "array", "items": _INDEX},
        "I2": {"type": "array", "items": _INDEX},
        "map": {
            "type": "array",
            "items": {
                "type": "array",
                "items": _INDEX,
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
    "additionalProperties": False,
}

HOM_SET_SCHEMA = {
    "type": "object",
    "required": ["source", "target", "count", "morphisms"],
    "properties": {
        "source": _FOREST,
        "target": _FOREST,
        "count": {"type": "integer", "minimum": 0},
        "morphisms": {"type": "array", "items": MORPHISM_SCHEMA},
    },
    "additionalProperties": False,
}

CHECK_REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "checked", "failures", "passed"],
    "properties": {
        "suite": {"type": "string"},
        "family": {"type": ["string", "null"]},
        "params": {"type": "object"},
        "checked": {"type": "integer", "minimum": 0},
        "failures": {"type": "array", "items": {"type": "string"}},
        "passed": {"type": "boolean"},
        "elapsed_seconds": {"type": "number"},
    },
    "additionalProperties": False,
}

HOM_REPORT_SCHEMA = {
    "type": "object",
    "required": ["map", "family", "max_degree", "checked_pairs", "failures", "passed"],
    "properties": {
        "map": {"type": "string"},
        "family": {"type": "string"},
        "max_degree": {"type": "integer", "minimum": 1},
        "checked_pairs": {"type": "integer", "minimum": 0},
        "failures": {"type": "array", "items": {"type": "string"}},
        "degree_dimensions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "family", "target"],
                "properties": {
                    "degree": {"type": "integer"},
                    "family": {"type": "integer"},
                    "target": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        },
        "passed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

IDEALS_SCHEMA = {
    "type": "object",
    "required": ["forest", "ideals", "grouped"],
    "properties": {
        "forest": _FOREST,
        "ideals": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ideal", "complement", "vertices"],
                "properties": {
                    "ideal": _FOREST,
                    "complement": _FOREST,
                    "vertices": {"type": "array", "items": _INDEX},
                },
                "additionalProperties": False,
            },
        },
        "grouped": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ideal", "complement", "count"],
                "properties": {
                    "ideal": _FOREST,
                    "complement": _FOREST,
                    "count": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

CUTS_SCHEMA = {
    "type": "object",
    "required": ["tree", "cuts"],
    "properties": {
        "tree": _FOREST,
        "cuts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["edges", "lower", "upper"],
                "properties": {
                    "edges": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": _INDEX,
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                    "lower": _FOREST,
                    "upper": _FOREST,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

KEY_LIST_SCHEMA = {
    "type": "object",
    "required": ["results"],
    "properties": {"results": {"type": "array", "items": {"type": "string"}}},
    "additionalProperties": False,
}

AUT_SCHEMA = {
    "type": "object",
    "required": ["results"],
    "properties": {
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["forest", "aut"],
                "properties": {
                    "forest": _FOREST,
                    "aut": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        }
    },
    "additionalProperties": False,
}
