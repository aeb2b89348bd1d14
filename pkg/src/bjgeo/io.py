"""JSON encoding of spaces and operators, with field-path diagnostics."""

from __future__ import annotations

import json
import math
import numbers
from pathlib import Path

import numpy as np

from . import norm_core as nc
from .attain import Operator
from .exceptions import InputError


def _number(v, field):
    if isinstance(v, bool) or not isinstance(v, numbers.Real) or not math.isfinite(v):
        raise InputError(f"expected a finite number, got {v!r}", field)
    return float(v)


def parse_vector(v, field="vector") -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise InputError("expected a non-empty list of numbers", field)
    return np.array([_number(c, f"{field}[{i}]") for i, c in enumerate(v)])


def parse_matrix(m, field="matrix") -> np.ndarray:
    if not isinstance(m, list) or not m:
        raise InputError("expected a non-empty list of rows", field)
    rows = [parse_vector(r, f"{field}[{i}]") for i, r in enumerate(m)]
    if len({len(r) for r in rows}) != 1:
        raise InputError("rows have different lengths", field)
    return np.array(rows)


def space_from_dict(d, field="space") -> nc.NormSpace:
    if not isinstance(d, dict):
        raise InputError("expected an object", field)
    kind = d.get("kind")
    try:
        if kind == nc.LP:
            p = d.get("p")
            if isinstance(p, str):
                if p != "inf":
                    raise InputError("p must be a number >= 1 or \"inf\"", f"{field}.p")
            else:
                p = _number(p, f"{field}.p")
                if p < 1:
                    raise InputError("p must be >= 1", f"{field}.p")
            dim = d.get("dim")
            if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
                raise InputError("dim must be a positive integer", f"{field}.dim")
            return nc.lp(p, dim)
        if kind == nc.POLYGON:
            V = parse_matrix(d.get("vertices"), f"{field}.vertices")
            if V.shape[1] != 2:
                raise InputError("vertices must be points of the plane", f"{field}.vertices")
            return nc.polygon(V)
        if kind == nc.INNER_PRODUCT:
            return nc.inner_product(parse_matrix(d.get("gram"), f"{field}.gram"))
    except InputError:
        raise
    except ValueError as e:
        raise InputError(str(e), field) from e
    raise InputError(f"kind must be one of lp, polygon, inner_product; got {kind!r}", f"{field}.kind")


def space_to_dict(space: nc.NormSpace) -> dict:
    if space.kind == nc.LP:
        p = "inf" if space.p == nc.INF else (int(space.p) if float(space.p).is_integer() else space.p)
        return {"kind": nc.LP, "p": p, "dim": space.dim}
    if space.kind == nc.POLYGON:
        return {"kind": nc.POLYGON, "vertices": [list(v) for v in space.vertices]}
    return {"kind": nc.INNER_PRODUCT, "gram": [list(r) for r in space.gram]}


def operator_from_dict(d, field="operator") -> Operator:
    if not isinstance(d, dict):
        raise InputError("expected an object", field)
    if "domain" not in d:
        raise InputError("missing", f"{field}.domain")
    X = space_from_dict(d["domain"], f"{field}.domain")
    Y = space_from_dict(d["codomain"], f"{field}.codomain") if "codomain" in d else X
    A = parse_matrix(d.get("matrix"), f"{field}.matrix")
    if A.shape != (Y.dim, X.dim):
        raise InputError(f"shape {list(A.shape)} does not match codomain x domain "
                         f"dimensions [{Y.dim}, {X.dim}]", f"{field}.matrix")
    return Operator(A, X, Y)


def operator_to_dict(T: Operator) -> dict:
    return {"matrix": T.matrix.tolist(), "domain": space_to_dict(T.domain),
            "codomain": space_to_dict(T.codomain)}


def load_json(source: str):
    """Parse a JSON file, or a literal JSON text if ``source`` starts with '{' or '['."""
    text = source
    name = "<inline>"
    if not source.lstrip().startswith(("{", "[")):
        path = Path(source)
        if not path.is_file():
            raise InputError(f"no such file: {source}")
        text = path.read_text()
        name = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{name}: line {e.lineno}, column {e.colno}: {e.msg}") from e


def load_space(source: str) -> nc.NormSpace:
    return space_from_dict(load_json(source))


def load_operator(source: str) -> Operator:
    return operator_from_dict(load_json(source))


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, repr floats."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")
