"""Reading and writing matrices and Jordan specs.

Matrices come either as plain text::

    3 3
    4 0 1
    2 3 2
    1 0 4

or as JSON ``{"rows": 3, "cols": 3, "entries": [["4", "0", "1"], ...]}``.
Entries are rationals written ``p/q``. Jordan specs are JSON lists such as
``[{"lambda": "1/2", "blocks": [[2, 1], [1, 3]]}]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .eigenideal import JordanSpec, _fstr
from .errors import DimensionError, ParseError, ValidationError
from .matrix import QMatrix


def _rational(token) -> Fraction:
    try:
        return Fraction(str(token).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {token!r}") from exc


def _int(token, what: str) -> int:
    try:
        return int(str(token))
    except ValueError as exc:
        raise ParseError(f"{what} must be an integer, got {token!r}") from exc


def parse_matrix(text: str) -> QMatrix:
    text = text.strip()
    if text.startswith("{"):
        return _matrix_from_json(text)
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 2:
        raise ParseError("matrix text must start with a line 'rows cols'")
    r, c = (_int(v, "dimension") for v in lines[0])
    rows = [[_rational(v) for v in ln] for ln in lines[1:]]
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ParseError(f"expected {r} rows of {c} entries")
    return QMatrix(r, c, tuple(tuple(row) for row in rows))


def _matrix_from_json(text: str) -> QMatrix:
    try:
        data = json.loads(text)
        r, c, entries = data["rows"], data["cols"], data["entries"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed matrix record: {exc}") from exc
    r, c = _int(r, "rows"), _int(c, "cols")
    if entries and not isinstance(entries[0], list):
        if len(entries) != r * c:
            raise ParseError(f"expected {r * c} entries, got {len(entries)}")
        entries = [entries[i * c:(i + 1) * c] for i in range(r)]
    try:
        return QMatrix(r, c, tuple(tuple(_rational(v) for v in row) for row in entries))
    except DimensionError as exc:
        raise ParseError(str(exc)) from exc


def matrix_to_data(A: QMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols,
            "entries": [[_fstr(v) for v in row] for row in A.entries]}


def format_matrix(A: QMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines += [" ".join(_fstr(v) for v in row) for row in A.entries]
    return "\n".join(lines) + "\n"


def parse_spec(text: str) -> JordanSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed Jordan spec: {exc}") from exc
    if isinstance(data, dict):
        data = [data]
    try:
        return JordanSpec.from_data(data)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc


def load_matrix(path) -> QMatrix:
    try:
        return parse_matrix(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc.strerror}") from exc


def load_spec(source: str) -> JordanSpec:
    """A spec from a file path, or inline JSON when ``source`` is not a file."""
    p = Path(source)
    if p.is_file():
        return parse_spec(p.read_text())
    if source.lstrip().startswith(("[", "{")):
        return parse_spec(source)
    raise ParseError(f"no spec file {source!r} and not inline JSON")
