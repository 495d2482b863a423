"""JSON file formats for spaces, tensors and screens.

Rational entries travel as strings ("p/q") or integer literals, never floats,
so values survive the round trip bit for bit. Field names: a space file has
`dim` and `gram`; a tensor file has `type`, `dim`, `components` and an
optional `basis` whose columns are the basis vectors; a screen file has `dim`
and `basis`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import NonSymmetric, ParseError, SingularBasis
from .exact_linalg import Matrix, Vector, is_invertible
from .space import Space
from .tensor import Tensor


def parse_scalar(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: rational entries must be integers or 'p/q' strings, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational literal {value!r}") from exc


def format_scalar(x: Fraction) -> str:
    return str(x)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def _parse_matrix(data: Any, dim: int, where: str) -> Matrix:
    if not isinstance(data, list) or len(data) != dim:
        raise ParseError(f"{where}: expected {dim} rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{where}: row {i} must have {dim} entries")
        rows.append([parse_scalar(x, f"{where}[{i}]") for x in row])
    return Matrix.from_rows(rows)


def load_space(path: str) -> Space:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: space file must be a JSON object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{path}: 'dim' must be a positive integer")
    gram = _parse_matrix(data.get("gram"), dim, f"{path}: gram")
    if not gram.is_symmetric():
        raise NonSymmetric(f"{path}: gram matrix is not symmetric")
    return Space(gram)


def load_tensor(path: str, space: Space) -> Tensor:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: tensor file must be a JSON object")
    ttype = data.get("type")
    if (
        not isinstance(ttype, list)
        or len(ttype) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in ttype)
    ):
        raise ParseError(f"{path}: 'type' must be a pair of nonnegative integers")
    dim = data.get("dim")
    if dim != space.n:
        raise ParseError(f"{path}: tensor dimension {dim} does not match space dimension {space.n}")
    r, s = ttype
    comps = data.get("components")
    expected = space.n ** (r + s)
    if not isinstance(comps, list) or len(comps) != expected:
        raise ParseError(f"{path}: 'components' must list {expected} entries")
    parsed = tuple(parse_scalar(x, f"{path}: components[{i}]") for i, x in enumerate(comps))
    basis = None
    if data.get("basis") is not None:
        basis = _parse_matrix(data["basis"], space.n, f"{path}: basis")
        if not is_invertible(basis):
            raise SingularBasis(f"{path}: basis matrix is singular")
    return Tensor(space, r, s, parsed, basis)


def load_screen(path: str, space: Space) -> list[Vector]:
    """Screen hint vectors: the columns of the file's `basis` field."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: screen file must be a JSON object")
    dim = data.get("dim")
    if dim != space.n:
        raise ParseError(f"{path}: screen dimension {dim} does not match space dimension {space.n}")
    cols = data.get("basis")
    if not isinstance(cols, list) or not cols:
        raise ParseError(f"{path}: 'basis' must be a nonempty 2-D array")
    width = None
    rows = []
    for i, row in enumerate(cols):
        if not isinstance(row, list):
            raise ParseError(f"{path}: basis row {i} must be a list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"{path}: ragged basis rows")
        rows.append([parse_scalar(x, f"{path}: basis[{i}]") for x in row])
    if len(rows) != space.n:
        raise ParseError(f"{path}: basis must have {space.n} rows")
    m = Matrix.from_rows(rows)
    return [m.col(j) for j in range(m.cols)]


def tensor_payload(t: Tensor) -> dict:
    """The tensor as a JSON-ready object that `load_tensor` reads back bit-identically."""
    payload: dict = {
        "type": [t.contra, t.cova],
        "dim": t.dim,
        "components": [format_scalar(x) for x in t.components],
    }
    if t.basis is not None:
        payload["basis"] = [[format_scalar(t.basis[i, j]) for j in range(t.dim)] for i in range(t.dim)]
    return payload
