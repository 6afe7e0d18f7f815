"""JSON file formats for matrices, frames and g-frames.

Matrix::

    {"rows": n, "cols": m, "entries": [[re, im], ...]}     # row-major

Frame::

    {"dim": n, "vectors": [[[re, im], ...], ...]}

g-frame::

    {"dim_h": n, "dim_ht": m, "members": [<matrix>, ...]}

Floats are written with 17 significant digits, which round-trips every finite
binary64 value exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError, ParseError, ShapeError
from .frames import Frame
from .gframes import GFrame


def _float(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ShapeError(f"cannot serialise non-finite value {x!r}")
    text = f"{x:.17g}"
    # keep integral values recognisable as floats
    return text if ("." in text or "e" in text) else text + ".0"


def dumps(obj, indent: int | None = 2, _level: int = 0) -> str:
    """JSON text for plain data (dict, list, str, bool, None, numbers)."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v, indent) for v in obj) + "]"
        return "[" + ",".join(pad + dumps(v, indent, _level + 1) for v in obj) + end + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent, _level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim == 1:
        M = M[:, None]
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in M.reshape(-1)],
    }


def _complex_list(entries, where) -> np.ndarray:
    if not isinstance(entries, list):
        raise ParseError(f"{where}: expected a list of [re, im] pairs")
    out = np.empty(len(entries), dtype=np.complex128)
    for k, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise ParseError(f"{where}[{k}]: expected [re, im] with numeric parts")
        out[k] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise ShapeError(f"{where}: non-finite entries")
    return out


def _positive_int(doc, key, where):
    value = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"{where}: '{key}' must be a positive integer")
    return value


def matrix_from_json(doc, where="matrix") -> np.ndarray:
    rows = _positive_int(doc, "rows", where)
    cols = _positive_int(doc, "cols", where)
    flat = _complex_list(doc.get("entries"), where + ".entries")
    if flat.size != rows * cols:
        raise ShapeError(f"{where}: {flat.size} entries for a {rows} x {cols} matrix")
    return flat.reshape(rows, cols)


def frame_to_json(frame: Frame) -> dict:
    return {
        "dim": frame.dim,
        "vectors": [[[float(z.real), float(z.imag)] for z in v] for v in frame.vectors],
    }


def frame_from_json(doc, where="frame") -> Frame:
    dim = _positive_int(doc, "dim", where)
    vectors = doc.get("vectors")
    if not isinstance(vectors, list) or not vectors:
        raise ParseError(f"{where}: 'vectors' must be a non-empty list")
    rows = []
    for k, v in enumerate(vectors):
        row = _complex_list(v, f"{where}.vectors[{k}]")
        if row.size != dim:
            raise ShapeError(f"{where}.vectors[{k}] has length {row.size}, expected {dim}")
        rows.append(row)
    return Frame(np.vstack(rows))


def gframe_to_json(g: GFrame) -> dict:
    return {"dim_h": g.dim_h, "dim_ht": g.dim_ht, "members": [matrix_to_json(m) for m in g.members]}


def gframe_from_json(doc, where="gframe") -> GFrame:
    n = _positive_int(doc, "dim_h", where)
    m = _positive_int(doc, "dim_ht", where)
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise ParseError(f"{where}: 'members' must be a non-empty list")
    mats = [matrix_from_json(d, f"{where}.members[{k}]") for k, d in enumerate(members)]
    for k, M in enumerate(mats):
        if M.shape != (m, n):
            raise ShapeError(f"{where}.members[{k}] is {M.shape}, expected {(m, n)}")
    return GFrame(np.stack(mats))


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def parse_matrix_file(path) -> np.ndarray:
    return matrix_from_json(read_json(path), str(path))


def parse_frame_file(path) -> Frame:
    return frame_from_json(read_json(path), str(path))


def parse_gframe_file(path) -> GFrame:
    return gframe_from_json(read_json(path), str(path))


def parse_blocks_file(path) -> list[np.ndarray]:
    """``{"blocks": [<matrix>, ...]}``"""
    doc = read_json(path)
    blocks = doc.get("blocks") if isinstance(doc, dict) else None
    if not isinstance(blocks, list) or not blocks:
        raise ParseError(f"{path}: 'blocks' must be a non-empty list")
    return [matrix_from_json(b, f"{path}.blocks[{k}]") for k, b in enumerate(blocks)]


def write_text(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None
