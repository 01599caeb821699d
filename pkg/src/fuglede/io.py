"""JSON documents for point sets and residue matrices.

Output is canonical: sorted keys, compact separators, integers only in
exact payloads, so emitted documents are byte-stable.
"""

from __future__ import annotations

import json
import sys

from .errors import DocumentError, FugledeError
from .field import PointSet, ResidueMatrix, check_prime


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path: str):
    """Parse JSON from a file, or from stdin when ``path`` is ``-``."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read: {exc.strerror}", path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", path) from exc


def _int(x, where, path):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}", path)
    return x


def _list(x, where, path):
    if not isinstance(x, list):
        raise DocumentError(f"{where}: expected a list", path)
    return x


def parse_set_document(doc, path: str = "") -> PointSet:
    if not isinstance(doc, dict):
        raise DocumentError("set document must be an object", path)
    for key in ("moduli", "points"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}", path)
    moduli = [_int(m, f"moduli[{i}]", path) for i, m in enumerate(_list(doc["moduli"], "moduli", path))]
    for i, m in enumerate(moduli):
        if m < 1:
            raise DocumentError(f"moduli[{i}]: modulus must be positive", path)
    seen = {}
    points = []
    for k, pt in enumerate(_list(doc["points"], "points", path)):
        pt = _list(pt, f"points[{k}]", path)
        if len(pt) != len(moduli):
            raise DocumentError(f"points[{k}]: has {len(pt)} coordinates, expected {len(moduli)}", path)
        for c, (x, m) in enumerate(zip(pt, moduli)):
            _int(x, f"points[{k}][{c}]", path)
            if not 0 <= x < m:
                raise DocumentError(f"points[{k}][{c}]: coordinate {x} outside [0, {m})", path)
        t = tuple(pt)
        if t in seen:
            raise DocumentError(f"points[{k}]: duplicate of points[{seen[t]}]", path)
        seen[t] = k
        points.append(t)
    if not points:
        raise DocumentError("points: set is empty", path)
    return PointSet(tuple(moduli), tuple(points))


def set_document(E: PointSet, label: str | None = None) -> dict:
    doc = {"moduli": list(E.moduli), "points": [list(x) for x in E]}
    if label:
        doc["label"] = label
    return doc


def parse_matrix_document(doc, path: str = "") -> ResidueMatrix:
    if not isinstance(doc, dict):
        raise DocumentError("matrix document must be an object", path)
    for key in ("p", "rows"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}", path)
    p = _int(doc["p"], "p", path)
    try:
        check_prime(p)
    except FugledeError as exc:
        raise DocumentError(f"p: {exc}", path) from exc
    rows = _list(doc["rows"], "rows", path)
    if not rows:
        raise DocumentError("rows: matrix is empty", path)
    width = None
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"rows[{i}]", path)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DocumentError(f"rows[{i}]: length {len(row)}, expected {width}", path)
        for j, x in enumerate(row):
            _int(x, f"rows[{i}][{j}]", path)
            if not 0 <= x < p:
                raise DocumentError(f"rows[{i}][{j}]: entry {x} outside [0, {p})", path)
        out.append(tuple(row))
    return ResidueMatrix(p, tuple(out))


def matrix_document(M: ResidueMatrix) -> dict:
    return {"p": M.p, "rows": M.to_lists()}


def parse_vector(text: str) -> list[int]:
    """``"0,1,2"`` or a JSON list."""
    text = text.strip()
    try:
        v = json.loads(text) if text.startswith("[") else [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise DocumentError(f"cannot parse vector {text!r}") from exc
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise DocumentError(f"vector must be a list of integers: {text!r}")
    return v
