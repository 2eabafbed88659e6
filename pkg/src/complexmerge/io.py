"""JSON interchange for accumulator complexes, quotient complexes and reports.

All indices in files are 1-based. Output is deterministic: keys sorted, floats
written as shortest round-trip decimals, one row of a nested array per line.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .congruence import AccumulatorComplex, QuotientComplex
from .errors import MergeError, SchemaError
from .sparse import ClassPartition, SignedSparseMatrix
from .validation import ValidationReport

SCHEMA_VERSION = "1.0"

_INDEX = {"type": "integer", "minimum": 1}
_INDEX_LISTS = {"type": "array", "items": {"type": "array", "items": _INDEX}}
_SIGN_LISTS = {"type": "array", "items": {"type": "array", "items": {"enum": [-1, 1]}}}
_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
_MATRIX = {
    "type": "object",
    "additionalProperties": False,
    "required": ["nrows", "ncols", "triples"],
    "properties": {
        "nrows": {"type": "integer", "minimum": 0},
        "ncols": {"type": "integer", "minimum": 0},
        "triples": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [_INDEX, _INDEX, {"type": "integer", "not": {"const": 0}}],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
}

COMPLEX_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "vertices", "delta0", "delta1"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "vertices": {"type": "array", "items": _POINT},
        "delta0": _MATRIX,
        "delta1": _MATRIX,
    },
}

QUOTIENT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "engine", "vertices", "ev", "fe", "classes", "dropped", "source_counts"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "engine": {"enum": ["aa", "sparse"]},
        "vertices": {"type": "array", "items": _POINT},
        "ev": _INDEX_LISTS,
        "fe": _INDEX_LISTS,
        "delta0": _MATRIX,
        "delta1": _MATRIX,
        "classes": {
            "type": "object",
            "additionalProperties": False,
            "required": ["vertices", "edges", "faces"],
            "properties": {"vertices": _INDEX_LISTS, "edges": _INDEX_LISTS, "faces": _INDEX_LISTS},
        },
        "signs": {
            "type": "object",
            "additionalProperties": False,
            "required": ["edges", "faces"],
            "properties": {"edges": _SIGN_LISTS, "faces": _SIGN_LISTS},
        },
        "dropped": {
            "type": "object",
            "additionalProperties": False,
            "required": ["edges", "faces"],
            "properties": {
                "edges": {"type": "array", "items": _INDEX},
                "faces": {"type": "array", "items": _INDEX},
            },
        },
        "source_counts": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 3,
            "maxItems": 3,
        },
    },
    "dependentRequired": {"delta0": ["delta1", "signs"], "delta1": ["delta0", "signs"]},
}


# writing


def _compact(obj: Any) -> str:
    return json.dumps(obj, separators=(", ", ": "), allow_nan=False)


def _dump(obj: Any, indent: int = 0) -> str:
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(obj[k], indent + 2)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, list) and obj and all(isinstance(x, (list, dict)) for x in obj):
        return "[\n" + ",\n".join(pad + _dump(x, indent + 2) for x in obj) + "\n" + " " * indent + "]"
    return _compact(obj)


def dumps(obj: Any) -> str:
    return _dump(obj) + "\n"


def _write(path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _points(v: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.asarray(v, dtype=float)]


def _matrix(m: SignedSparseMatrix) -> dict:
    return {"nrows": m.nrows, "ncols": m.ncols, "triples": [list(t) for t in m.triples()]}


def _one_based(lists) -> list[list[int]]:
    return [[int(i) + 1 for i in c] for c in lists]


def complex_to_dict(acc: AccumulatorComplex) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "vertices": _points(acc.vertices),
        "delta0": _matrix(acc.delta0),
        "delta1": _matrix(acc.delta1),
    }


def quotient_to_dict(q: QuotientComplex) -> dict:
    d = {
        "schema_version": SCHEMA_VERSION,
        "engine": q.engine,
        "vertices": _points(q.vertices),
        "ev": _one_based(q.ev),
        "fe": _one_based(q.fe),
        "classes": {
            "vertices": _one_based(q.vclasses.classes),
            "edges": _one_based(q.eclasses.classes),
            "faces": _one_based(q.fclasses.classes),
        },
        "dropped": {
            "edges": [i + 1 for i in q.dropped_edges],
            "faces": [i + 1 for i in q.dropped_faces],
        },
        "source_counts": list(q.source_counts),
    }
    if q.delta0 is not None and q.delta1 is not None:
        d["delta0"] = _matrix(q.delta0)
        d["delta1"] = _matrix(q.delta1)
        d["signs"] = {
            "edges": [list(s) for s in q.eclasses.member_signs()],
            "faces": [list(s) for s in q.fclasses.member_signs()],
        }
    return d


def report_to_dict(r: ValidationReport) -> dict:
    return {
        "dd_zero": "skipped" if r.dd_zero is None else r.dd_zero,
        "euler": {"value": r.euler_value, "expected": r.euler_expected},
        "counts": dict(zip(("vertices", "edges", "faces"), r.counts)),
        "dropped": dict(r.degenerate_dropped),
        "partitions_ok": r.partitions_ok,
        "cells_ok": r.cells_ok,
        "ok": r.ok,
        "violations": list(r.violations),
    }


def save_complex(acc: AccumulatorComplex, path) -> None:
    _write(path, complex_to_dict(acc))


def save_quotient(q: QuotientComplex, path) -> None:
    _write(path, quotient_to_dict(q))


def save_report(r: ValidationReport, path) -> None:
    _write(path, report_to_dict(r))


# reading


def read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"{path}: cannot read: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e


def _validate(obj: Any, schema: dict, where: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if err is not None:
        field = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{where}: field {field}: {err.message}")


def _load_matrix(d: dict, name: str, where: str) -> SignedSparseMatrix:
    try:
        return SignedSparseMatrix.from_triples(d["nrows"], d["ncols"], d["triples"])
    except MergeError as e:
        raise SchemaError(f"{where}: field {name}: {e}") from e


def complex_from_dict(obj: Any, where: str = "<complex>") -> AccumulatorComplex:
    _validate(obj, COMPLEX_SCHEMA, where)
    d0 = _load_matrix(obj["delta0"], "delta0", where)
    d1 = _load_matrix(obj["delta1"], "delta1", where)
    vertices = np.array(obj["vertices"], dtype=float).reshape(-1, 3)
    try:
        return AccumulatorComplex(vertices, d0, d1)
    except MergeError as e:
        raise SchemaError(f"{where}: {e}") from e


def _zero_based(lists) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(i - 1 for i in c) for c in lists)


def quotient_from_dict(obj: Any, where: str = "<quotient>") -> QuotientComplex:
    _validate(obj, QUOTIENT_SCHEMA, where)
    nv, ne, nf = obj["source_counts"]
    signs = obj.get("signs", {})
    delta0 = delta1 = None
    if "delta0" in obj:
        delta0 = _load_matrix(obj["delta0"], "delta0", where)
        delta1 = _load_matrix(obj["delta1"], "delta1", where)
    cls = obj["classes"]
    return QuotientComplex(
        vertices=np.array(obj["vertices"], dtype=float).reshape(-1, 3),
        ev=list(_zero_based(obj["ev"])),
        fe=list(_zero_based(obj["fe"])),
        vclasses=ClassPartition.unchecked(_zero_based(cls["vertices"]), nv),
        eclasses=ClassPartition.unchecked(_zero_based(cls["edges"]), ne, signs.get("edges")),
        fclasses=ClassPartition.unchecked(_zero_based(cls["faces"]), nf, signs.get("faces")),
        delta0=delta0,
        delta1=delta1,
        dropped_edges=tuple(i - 1 for i in obj["dropped"]["edges"]),
        dropped_faces=tuple(i - 1 for i in obj["dropped"]["faces"]),
        engine=obj["engine"],
    )


def load_complex(path) -> AccumulatorComplex:
    return complex_from_dict(read_json(path), str(path))


def load_quotient(path) -> QuotientComplex:
    return quotient_from_dict(read_json(path), str(path))
