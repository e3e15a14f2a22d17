"""JSON readers and writers for vertex sets, sequences and matrices."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .gaussian import GaussianRational, parse_rational
from .geometry import GeometryError, VertexSet
from .sequences import TailedSequence
from .surd import Surd

SCHEMA_VERSION = "normdiag-report/1"


class InputError(ValueError):
    pass


def read_json(path: Union[str, Path]):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _scalar(entry, where: str) -> GaussianRational:
    if isinstance(entry, dict):
        unknown = set(entry) - {"re", "im"}
        if unknown:
            raise InputError(f"{where}: unexpected keys {sorted(unknown)}")
        try:
            return GaussianRational(entry.get("re", "0"), entry.get("im", "0"))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}: {exc}") from None
    try:
        return GaussianRational(parse_rational(entry))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from None


def vertices_from_json(obj, exact: bool = True) -> VertexSet:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError('vertex file must be an object with a "vertices" list')
    raw = obj["vertices"]
    if not isinstance(raw, list):
        raise InputError('"vertices" must be a list')
    values = [_scalar(v, f"vertices[{k}]") for k, v in enumerate(raw)]
    try:
        if exact:
            return VertexSet(tuple(values))
        return VertexSet.from_floats([complex(v) for v in values])
    except GeometryError as exc:
        raise InputError(f"invalid vertex set: {exc}") from None


def sequence_from_json(obj, X: VertexSet) -> TailedSequence:
    if not isinstance(obj, dict) or "head" not in obj or "tail" not in obj:
        raise InputError('sequence file must be an object with "head" and "tail"')
    if not isinstance(obj["head"], list) or not isinstance(obj["tail"], list):
        raise InputError('"head" and "tail" must be lists')
    head = [_scalar(v, f"head[{n}]") for n, v in enumerate(obj["head"])]
    tail = obj["tail"]
    for k, t in enumerate(tail):
        if not isinstance(t, int) or isinstance(t, bool):
            raise InputError(f"tail[{k}] must be an integer vertex index")
    try:
        return TailedSequence(X, tuple(head), tuple(tail))
    except GeometryError as exc:
        raise InputError(f"invalid sequence: {exc}") from None


def matrix_from_json(obj) -> list:
    """A list of rows of {re, im} entries (or bare rationals)."""
    if isinstance(obj, dict) and "matrix" in obj:
        obj = obj["matrix"]
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be a list of rows")
    return [[_scalar(x, f"matrix[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]


def scalar_to_json(x) -> dict:
    if isinstance(x, GaussianRational):
        return x.to_json()
    if isinstance(x, Surd):
        return {"re": str(x), "im": "0"}
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": repr(float(x.real)), "im": repr(float(x.imag))}
    return {"re": str(x), "im": "0"}


def matrix_to_json(M) -> list:
    rows = M.rows if hasattr(M, "rows") else np.asarray(M)
    return [[scalar_to_json(x) for x in r] for r in rows]


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
