"""Text formats shared by the CLI.

* vertices file: four lines ``x y z``; blank lines and lines starting with
  ``#`` are ignored.
* points file: CSV with header ``x,y,z``, one point per row.

Floats are written with 17 significant digits so they read back exactly.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

from .geometry import Tetrahedron


class FormatError(ValueError):
    pass


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def parse_vertices(text: str) -> Tetrahedron:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'x y z', got {line!r}")
        try:
            row = [float(p) for p in parts]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in row):
            raise FormatError(f"line {lineno}: coordinates must be finite")
        rows.append(row)
    if len(rows) != 4:
        raise FormatError(f"expected 4 vertices, found {len(rows)}")
    return Tetrahedron.from_array(rows)


def format_vertices(tet: Tetrahedron) -> str:
    return "".join(" ".join(fmt_float(c) for c in v) + "\n" for v in tet)


def read_vertices(path) -> Tetrahedron:
    return parse_vertices(Path(path).read_text())


def write_vertices(path, tet: Tetrahedron) -> None:
    Path(path).write_text(format_vertices(tet))


def parse_points(text: str) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise FormatError("points file is empty")
    if [h.strip() for h in header] != ["x", "y", "z"]:
        raise FormatError(f"expected header 'x,y,z', got {','.join(header)!r}")
    rows = []
    for lineno, row in enumerate(reader, 2):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 3:
            raise FormatError(f"line {lineno}: expected 3 fields, got {len(row)}")
        try:
            rows.append([float(v) for v in row])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if not rows:
        raise FormatError("points file has no data rows")
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise FormatError("points must be finite")
    return arr


def format_points(points) -> str:
    buf = io.StringIO()
    buf.write("x,y,z\n")
    for x, y, z in np.asarray(points, dtype=float).tolist():
        buf.write(f"{fmt_float(x)},{fmt_float(y)},{fmt_float(z)}\n")
    return buf.getvalue()


def read_points(path) -> np.ndarray:
    return parse_points(Path(path).read_text())


def write_points(path, points) -> None:
    Path(path).write_text(format_points(points))
