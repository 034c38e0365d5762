"""JSON schemas of the --json payloads, keyed by subcommand."""

from __future__ import annotations

_STR = {"type": "string"}
_NUM = {"type": "number"}
_STRS = {"type": "array", "items": _STR}
_MATRIX = {"type": "array", "items": _STRS}
_COMPLEX = {
    "type": "object",
    "properties": {"re": _NUM, "im": _NUM},
    "required": ["re", "im"],
    "additionalProperties": False,
}
_LOC = {"type": "string", "pattern": r"^(inf|-?\d+(/\d+)?)$"}
_EXPS = {"type": "array", "items": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}}
_CLASS = {"enum": ["ordinary", "regular_singular", "irregular"]}
_CERT = {
    "type": "object",
    "properties": {"t": {"type": "integer"}, "u": _STR, "coefficients": _STRS, "label": _STR},
    "required": ["t", "u", "coefficients", "label"],
    "additionalProperties": False,
}


def _obj(props: dict, required=None) -> dict:
    base = {"command": _STR, "status": {"enum": ["ok", "not_found"]}}
    base.update(props)
    return {
        "type": "object",
        "properties": base,
        "required": ["command", "status"] + list(props if required is None else required),
        "additionalProperties": False,
    }


_OP = _obj({"operator": _STR})
_SYS = _obj({"matrix": _MATRIX})
_VALUE = _obj({"value": _COMPLEX, "error": _NUM})

SCHEMAS: dict[str, dict] = {
    "dop mul": _OP,
    "dop divr": _obj({"quotient": _STR, "remainder": _STR}),
    "dop gcrd": _OP,
    "dop lclm": _OP,
    "dop adjoint": _OP,
    "dop apply": _obj({"result": _STR}),
    "sys companion": _SYS,
    "sys cyclic": _obj({"operator": _STR, "gauge": _MATRIX}),
    "sys gauge": _SYS,
    "sys dsum": _SYS,
    "sys tensor": _SYS,
    "sys hom": _SYS,
    "sys dual": _SYS,
    "sing points": _obj({
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "location": _LOC,
                    "classification": _CLASS,
                    "indicial": {"type": ["string", "null"]},
                    "exponents": _EXPS,
                    "complete": {"type": "boolean"},
                },
                "required": ["location", "classification", "indicial", "exponents", "complete"],
                "additionalProperties": False,
            },
        }
    }),
    "sing fuchs": _obj({"location": _LOC, "classification": _CLASS}),
    "sing indicial": _obj({"location": _LOC, "indicial": _STR}),
    "sing exponents": _obj({"location": _LOC, "exponents": _EXPS, "complete": {"type": "boolean"}}),
    "solve poly": _obj({"degree_bound": {"type": "integer"}, "solutions": _STRS}),
    "solve exp": _obj({
        "outcome": {"enum": ["found", "empty_complete", "inconclusive"]},
        "solutions": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"u": _STR, "p": _STR, "exponents": _EXPS},
                "required": ["u", "p", "exponents"],
                "additionalProperties": False,
            },
        },
        "skipped": _STRS,
    }),
    "sympow": _obj({"m": {"type": "integer"}, "s": _STR, "operator": _STR}),
    "kovacic": _obj({
        "decision": {"enum": ["LIOUVILLIAN", "NOT_LIOUVILLIAN", "INCONCLUSIVE"]},
        "label": {"type": ["string", "null"]},
        "s": _STR,
        "certificate": {"oneOf": [_CERT, {"type": "null"}]},
        "reasons": _STRS,
    }),
    "sum borel": _obj({"k": _STR, "coefficients": {"type": "array", "items": {"type": ["string", "number"]}}}),
    "sum pade": _obj({"p": {"type": "integer"}, "q": {"type": "integer"}, "numerator": _STR, "denominator": _STR}),
    "sum laplace": _VALUE,
    "sum bpl": _VALUE,
    "sum jump": _VALUE,
    "sum directions": _obj({
        "stokes": {"type": "array", "items": _NUM},
        "negative_pairs": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}},
        "singular": {"type": "array", "items": _NUM},
    }),
}

ERROR_SCHEMA = {
    "type": "object",
    "properties": {
        "command": _STR,
        "status": {"enum": ["parse_error", "unsupported"]},
        "error": _STR,
        "position": {"type": "integer"},
    },
    "required": ["command", "status", "error"],
    "additionalProperties": False,
}
