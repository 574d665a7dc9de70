"""JSON Schemas (draft 2020-12) for the ``--format json`` outputs."""

_NUM = {"type": "number"}
_PAIR = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2}
_COMPLEX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

SPECTRUM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["geometry", "levels", "groups"],
    "additionalProperties": False,
    "properties": {
        "geometry": {
            "type": "object",
            "required": ["radius", "length", "mass", "hbar"],
            "properties": {k: _NUM for k in ("radius", "length", "mass", "hbar")},
        },
        "levels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n_z", "n_theta", "energy", "group", "multiplicity"],
                "additionalProperties": False,
                "properties": {
                    "n_z": {"type": "integer", "minimum": 1},
                    "n_theta": {"type": "integer", "minimum": 1},
                    "energy": _NUM,
                    "group": {"type": "integer", "minimum": 0},
                    "multiplicity": {"type": "integer", "minimum": 1},
                },
            },
        },
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["members", "energy", "multiplicity"],
                "additionalProperties": False,
                "properties": {
                    "members": {"type": "array", "items": _PAIR, "minItems": 1},
                    "energy": _NUM,
                    "multiplicity": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}

TABLES = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["label", "pair", "degenerate", "E0", "H", "E1", "notes"],
        "additionalProperties": False,
        "properties": {
            "label": {"type": "string"},
            "pair": {"type": "array", "items": _PAIR, "minItems": 1},
            "degenerate": {"type": "boolean"},
            "E0": _NUM,
            "H": {"type": "array", "items": _COMPLEX, "description": "row-major block as [re, im]"},
            "E1": {"type": "array", "items": _NUM},
            "notes": {"type": "array", "items": {"type": "string"}},
        },
    },
}

ADMISSIBILITY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["potential", "I1", "I2", "is_real", "is_nonzero", "admissible"],
    "properties": {
        "potential": {"type": "string"},
        "I1": _COMPLEX,
        "I2": _COMPLEX,
        "is_real": {"type": "boolean"},
        "is_nonzero": {"type": "boolean"},
        "admissible": {"type": "boolean"},
    },
}

VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["passed", "checks"],
    "additionalProperties": False,
    "properties": {
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "predicted", "observed", "tolerance", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "predicted": {"type": ["number", "null"]},
                    "observed": {"type": ["number", "null"]},
                    "tolerance": {"type": ["number", "null"]},
                    "detail": {"type": "string"},
                },
            },
        },
    },
}

BY_COMMAND = {"spectrum": SPECTRUM, "tables": TABLES, "admissibility": ADMISSIBILITY, "verify": VERIFY}
