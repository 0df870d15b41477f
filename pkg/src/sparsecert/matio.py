"""Matrix file I/O: JSON and CSV, with exact round-tripping.

JSON files carry ``{"rows": m, "cols": n, "data": [...]}`` with the data
row-major; CSV files hold one matrix row per line.  Decimals are written
with 17 significant digits, which round-trips every IEEE double exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import DimensionMismatch, ParseError
from .linalg import as_matrix


def _fmt(x: float) -> str:
    text = format(float(x), ".17g")
    # integral tokens would parse back as JSON integers, dropping the sign of -0.0
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def _reject_constant(token: str):
    raise ParseError(f"non-finite value {token!r} is not allowed")


def infer_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".csv":
        return "csv"
    raise ParseError(f"cannot infer matrix format from {path!r}; pass one explicitly")


def parse_matrix_json(text: str) -> np.ndarray:
    try:
        payload = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, offset=exc.colno) from exc
    if not isinstance(payload, dict):
        raise ParseError("matrix JSON must be an object with rows/cols/data")
    for key in ("rows", "cols", "data"):
        if key not in payload:
            raise ParseError(f"matrix JSON is missing the {key!r} field")
    rows, cols, data = payload["rows"], payload["cols"], payload["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or isinstance(rows, bool) or isinstance(cols, bool):
        raise ParseError("rows and cols must be integers")
    if rows < 1 or cols < 1:
        raise ParseError(f"dimensions must be positive, got {rows}x{cols}")
    if not isinstance(data, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in data
    ):
        raise ParseError("data must be a flat list of numbers")
    if len(data) != rows * cols:
        raise DimensionMismatch(
            f"declared {rows}x{cols} needs {rows * cols} values, got {len(data)}"
        )
    return as_matrix(np.array(data, dtype=float).reshape(rows, cols))


def parse_matrix_csv(text: str) -> np.ndarray:
    rows: list[list[float]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        tokens = line.split(",")
        values = []
        for pos, token in enumerate(tokens):
            try:
                value = float(token)
            except ValueError as exc:
                raise ParseError(
                    f"bad decimal {token.strip()!r}", line=lineno, offset=pos + 1
                ) from exc
            if not np.isfinite(value):
                raise ParseError(
                    f"non-finite value {token.strip()!r}", line=lineno, offset=pos + 1
                )
            values.append(value)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ParseError(
                f"ragged row: expected {width} values, got {len(values)}", line=lineno
            )
        rows.append(values)
    if not rows:
        raise ParseError("matrix file is empty")
    return as_matrix(rows)


def dump_matrix(A, fmt: str) -> str:
    A = as_matrix(A)
    if fmt == "json":
        data = ", ".join(_fmt(v) for v in A.ravel())
        return '{"rows": %d, "cols": %d, "data": [%s]}\n' % (A.shape[0], A.shape[1], data)
    if fmt == "csv":
        return "".join(",".join(_fmt(v) for v in row) + "\n" for row in A)
    raise ValueError(f"unknown matrix format {fmt!r}")


def load_matrix(path, fmt: str | None = None) -> np.ndarray:
    """Read a matrix file; the format is inferred from the suffix if omitted."""
    fmt = fmt or infer_format(path)
    text = Path(path).read_text()
    if fmt == "json":
        return parse_matrix_json(text)
    if fmt == "csv":
        return parse_matrix_csv(text)
    raise ValueError(f"unknown matrix format {fmt!r}")


def save_matrix(A, path, fmt: str | None = None) -> None:
    fmt = fmt or infer_format(path)
    Path(path).write_text(dump_matrix(A, fmt))


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def save_report(report: dict, path) -> None:
    Path(path).write_text(dump_report(report))
