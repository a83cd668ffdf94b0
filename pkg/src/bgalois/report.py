"""Deterministic JSON-compatible serialization of verdicts, certificates and matrices."""

from __future__ import annotations

import dataclasses
import json
from enum import Enum

from .exact import Field, FieldElem, Poly
from .homotopy import PathCertificate, PathMatrix
from .linalg import Mat, SimilarityInvariants

SCHEMA_VERSION = 1


def mat_to_json(m: Mat) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.to_rows()]


def path_to_json(p: PathMatrix) -> list[list[str]]:
    return [[x.to_str("t") for x in row] for row in p.to_rows()]


def certificate_to_json(c: PathCertificate) -> dict:
    checks = {}
    for name, rec in c.checks.items():
        checks[name] = to_jsonable(rec, var="t")
    return {
        "path": path_to_json(c.path),
        "endpoint0": mat_to_json(c.endpoint0),
        "endpoint1": mat_to_json(c.endpoint1),
        "checks": checks,
    }


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(_key(x) for x in k)
    return str(k)


def to_jsonable(obj, var: str = "x"):
    """Recursively convert library values into plain JSON data with canonical strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, FieldElem):
        return str(obj)
    if isinstance(obj, Poly):
        return obj.to_str(var)
    if isinstance(obj, Mat):
        return mat_to_json(obj)
    if isinstance(obj, PathMatrix):
        return path_to_json(obj)
    if isinstance(obj, PathCertificate):
        return certificate_to_json(obj)
    if isinstance(obj, Field):
        return obj.to_json()
    if isinstance(obj, SimilarityInvariants):
        return {
            "charpoly": obj.charpoly.to_str(var),
            "invariant_factors": [f.to_str(var) for f in obj.invariant_factors],
            "jordan": None if obj.jordan is None else
            {str(lam): list(sizes) for lam, sizes in obj.jordan_items()},
        }
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in dataclasses.fields(obj):
            if f.name.startswith("_"):
                continue
            out[f.name] = to_jsonable(getattr(obj, f.name), var)
        return out
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v, var) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(x, var) for x in obj), key=lambda s: json.dumps(s, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x, var) for x in obj]
    if isinstance(obj, Exception):
        return {"error": type(obj).__name__, "message": str(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    """Canonical text of a report: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
