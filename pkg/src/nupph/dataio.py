"""Reading point data and writing result tables."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

from .errors import GridError, ParseError
from .grid import NonUniformGrid, build_grid


def _parse_float(token: str, lineno: int) -> float:
    token = token.strip()
    if "," in token:
        raise ParseError(f"line {lineno}: use a decimal point, not a comma: {token!r}")
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: not a number: {token!r}") from None


def parse_csv(text: str) -> tuple[list[float], list[float]]:
    """Two columns ``x,f``; a non-numeric first row is taken as a header."""
    xs, fs = [], []
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    for lineno, row in enumerate(rows, start=1):
        if len(row) != 2:
            raise ParseError(f"line {lineno}: expected 2 columns, got {len(row)}")
        if lineno == 1:
            try:
                float(row[0]), float(row[1])
            except ValueError:
                continue
        xs.append(_parse_float(row[0], lineno))
        fs.append(_parse_float(row[1], lineno))
    return xs, fs


def parse_json(text: str) -> tuple[list[float], list[float]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "x" not in obj or "f" not in obj:
        raise ParseError('JSON input must be an object with arrays "x" and "f"')
    try:
        return [float(v) for v in obj["x"]], [float(v) for v in obj["f"]]
    except (TypeError, ValueError):
        raise ParseError('"x" and "f" must be arrays of numbers') from None


def read_points(path: str | Path) -> NonUniformGrid:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        xs, fs = parse_json(text)
    else:
        xs, fs = parse_csv(text)
    try:
        return build_grid(xs, fs)
    except GridError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def jsonable(obj: Any) -> Any:
    """Recursively convert to JSON-safe values; non-finite floats become null."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return jsonable(obj.item())
    return obj


def dump_json(obj: Any, stream: TextIO) -> None:
    json.dump(jsonable(obj), stream, indent=2, allow_nan=False)
    stream.write("\n")
