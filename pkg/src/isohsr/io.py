"""Scene text files and region CSV files."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, TextIO

from .scene import Rect, Scene
from .sweep import VisibleRegion

REGION_HEADER = ("owner_id", "x_start", "x_end", "y_low", "y_high")


class ParseError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        self.source, self.line = source, line
        super().__init__(f"{source}:{line}: {message}")


def _num(token: str) -> float | int:
    try:
        return int(token)
    except ValueError:
        value = float(token)
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {token!r}")
        return value


def parse_scene(text: str, source: str = "<scene>") -> Scene:
    """Parse ``id x1 x2 y1 y2 z`` lines; ``#`` starts a comment."""
    rects = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 6:
            raise ParseError(source, lineno, f"expected 6 fields, got {len(fields)}")
        try:
            rid = int(fields[0])
        except ValueError:
            raise ParseError(source, lineno, f"rectangle id {fields[0]!r} is not an integer") from None
        if rid < 0:
            raise ParseError(source, lineno, "rectangle ids must be non-negative")
        try:
            coords = [_num(f) for f in fields[1:]]
        except ValueError as exc:
            raise ParseError(source, lineno, str(exc)) from None
        rects.append(Rect(rid, *coords))
    return Scene(tuple(rects))


def read_scene(path: str | Path) -> Scene:
    path = Path(path)
    return parse_scene(path.read_text(), str(path))


def format_scene(scene: Scene, header: str | None = None) -> str:
    out = io.StringIO()
    if header:
        for line in header.splitlines():
            out.write(f"# {line}\n")
    for r in scene:
        out.write(" ".join([str(r.id)] + [_fmt(v) for v in (r.x1, r.x2, r.y1, r.y2, r.z)]) + "\n")
    return out.getvalue()


def _fmt(v) -> str:
    if isinstance(v, int) or (isinstance(v, float) and v.is_integer() and abs(v) < 2**53):
        return str(int(v))
    return repr(float(v))


def write_regions(regions: Iterable[VisibleRegion], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(REGION_HEADER)
    for r in regions:
        w.writerow([r.owner] + [_fmt(v) for v in r[1:]])


def read_regions(fh: TextIO, source: str = "<regions>") -> list[VisibleRegion]:
    rows = list(csv.reader(fh))
    if not rows or tuple(c.strip() for c in rows[0]) != REGION_HEADER:
        raise ParseError(source, 1, f"header must be {','.join(REGION_HEADER)}")
    out = []
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != 5:
            raise ParseError(source, lineno, f"expected 5 columns, got {len(row)}")
        try:
            out.append(VisibleRegion(int(row[0]), *(_num(c) for c in row[1:])))
        except ValueError as exc:
            raise ParseError(source, lineno, str(exc)) from None
    return out
