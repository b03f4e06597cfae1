"""JSON Schemas of the ``--json`` reports (draft 2020-12).

Every report carries a ``schema`` tag naming one of the entries of
:data:`SCHEMAS`; tags are bumped whenever a field changes meaning.
"""
from __future__ import annotations

_NUM = {"type": "number"}
_NUM_LIST = {"type": "array", "items": _NUM}

BOUND = {
    "type": "object",
    "required": ["schema", "quantity", "value", "method", "state", "outcomes", "certificate", "diagnostics"],
    "properties": {
        "schema": {"const": "entbounds.bound/1"},
        "quantity": {"enum": ["fidelity", "gre", "negativity"]},
        "value": {"type": "number", "minimum": 0},
        "method": {"enum": ["closed", "lp", "sdp"]},
        "state": {"type": "string"},
        "outcomes": _NUM_LIST,
        "certificate": {"type": ["object", "null"]},
        "diagnostics": {"type": "object"},
        "metadata": {"type": "object"},
        "source": {"type": "string"},
    },
    "additionalProperties": False,
}

SIMULATE = {
    "type": "object",
    "required": ["schema", "state", "gamma", "time", "gamma_t", "outcomes", "exact_gre", "measurement_file"],
    "properties": {
        "schema": {"const": "entbounds.simulate/1"},
        "state": {"type": "string"},
        "gamma": _NUM,
        "time": _NUM,
        "gamma_t": _NUM,
        "outcomes": _NUM_LIST,
        "exact_gre": {"type": "number", "minimum": 0},
        "measurement_file": {"type": "string"},
        "written_to": {"type": ["string", "null"]},
    },
    "additionalProperties": False,
}

_ROW = {
    "type": "object",
    "required": ["qubits", "exact", "estimate", "deviation"],
    "properties": {
        "qubits": {"type": "integer"},
        "state": {"type": "string"},
        "exact": _NUM,
        "estimate": _NUM,
        "deviation": _NUM,
        "paper": {
            "type": ["object", "null"],
            "required": ["exact", "estimate", "deviation"],
            "properties": {"exact": _NUM, "estimate": _NUM, "deviation": _NUM},
        },
        "passed": {"type": ["boolean", "null"]},
    },
}

TABLE1 = {
    "type": "object",
    "required": ["schema", "gamma_t", "tolerance", "rows", "compared", "passed"],
    "properties": {
        "schema": {"const": "entbounds.table1/1"},
        "gamma_t": _NUM,
        "tolerance": _NUM,
        "rows": {"type": "array", "items": _ROW, "minItems": 3, "maxItems": 3},
        "compared": {"type": "boolean"},
        "passed": {"type": "boolean"},
        "note": {"type": "string"},
    },
    "additionalProperties": False,
}

CERTIFICATES = {
    "type": "object",
    "required": ["schema", "certificates", "passed"],
    "properties": {
        "schema": {"const": "entbounds.certificates/1"},
        "certificates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "expected_pass", "margins"],
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "expected_pass": {"type": "boolean"},
                    "margins": {"type": "object", "additionalProperties": _NUM},
                    "violations": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "corrupted": {"type": "boolean"},
        "passed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

ERROR = {
    "type": "object",
    "required": ["schema", "error", "kind", "exit_code"],
    "properties": {
        "schema": {"const": "entbounds.error/1"},
        "error": {"type": "string"},
        "kind": {"enum": ["input", "infeasible", "solver", "check"]},
        "exit_code": {"type": "integer"},
        "line": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "entbounds.bound/1": BOUND,
    "entbounds.simulate/1": SIMULATE,
    "entbounds.table1/1": TABLE1,
    "entbounds.certificates/1": CERTIFICATES,
    "entbounds.error/1": ERROR,
}
