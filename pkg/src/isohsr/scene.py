"""Scene representation, validation and coordinate canonicalization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

BACKGROUND_ID = -1


@dataclass(frozen=True)
class Rect:
    """Iso-oriented rectangle ``[x1, x2] x [y1, y2]`` lying at height ``z``."""

    id: int
    x1: float
    x2: float
    y1: float
    y2: float
    z: float

    def contains_point(self, x: float, y: float) -> bool:
        return self.x1 < x < self.x2 and self.y1 < y < self.y2


BACKGROUND = Rect(BACKGROUND_ID, -math.inf, math.inf, -math.inf, math.inf, -math.inf)


@dataclass(frozen=True)
class Scene:
    rects: tuple[Rect, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rects, tuple):
            object.__setattr__(self, "rects", tuple(self.rects))

    def __len__(self) -> int:
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    @cached_property
    def bbox(self) -> tuple[float, float, float, float] | None:
        """``(xmin, xmax, ymin, ymax)`` or None for an empty scene."""
        if not self.rects:
            return None
        return (
            min(r.x1 for r in self.rects),
            max(r.x2 for r in self.rects),
            min(r.y1 for r in self.rects),
            max(r.y2 for r in self.rects),
        )

    @cached_property
    def x_order(self) -> tuple[tuple[int, int], ...]:
        """All 2n x endpoints as ``(rect index, role)`` sorted by value; role 0 is x1."""
        return _endpoint_order(self.rects, "x1", "x2")

    @cached_property
    def y_order(self) -> tuple[tuple[int, int], ...]:
        return _endpoint_order(self.rects, "y1", "y2")

    @cached_property
    def z_order(self) -> tuple[int, ...]:
        return tuple(sorted(range(len(self.rects)), key=lambda i: (self.rects[i].z, self.rects[i].id)))

    def by_id(self) -> dict[int, Rect]:
        return {r.id: r for r in self.rects}


def _endpoint_order(rects: Sequence[Rect], lo: str, hi: str):
    keyed = []
    for i, r in enumerate(rects):
        keyed.append(((getattr(r, lo), r.id, 0), (i, 0)))
        keyed.append(((getattr(r, hi), r.id, 1), (i, 1)))
    keyed.sort(key=lambda item: item[0])
    return tuple(item[1] for item in keyed)


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}: {', '.join(map(str, self.ids))}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class SceneError(ValueError):
    """Raised when a scene cannot be processed by the sweep."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


def validate(scene: Scene) -> ValidationReport:
    """Check extents, finiteness, id uniqueness and coordinate distinctness."""
    report = ValidationReport()
    add = report.violations.append

    ids: dict[int, int] = {}
    for r in scene:
        ids[r.id] = ids.get(r.id, 0) + 1
        if r.id == BACKGROUND_ID:
            add(Violation("reserved id", (r.id,)))
        if not all(math.isfinite(v) for v in (r.x1, r.x2, r.y1, r.y2, r.z)):
            add(Violation("non-finite coordinate", (r.id,)))
            continue
        if r.x1 == r.x2:
            add(Violation("empty x-extent", (r.id,)))
        elif r.x1 > r.x2:
            add(Violation("inverted x-extent", (r.id,)))
        if r.y1 == r.y2:
            add(Violation("empty y-extent", (r.id,)))
        elif r.y1 > r.y2:
            add(Violation("inverted y-extent", (r.id,)))
    for rid, count in sorted(ids.items()):
        if count > 1:
            add(Violation("duplicate id", (rid,)))

    for axis, attrs in (("x", ("x1", "x2")), ("y", ("y1", "y2")), ("z", ("z",))):
        seen: dict[float, list[int]] = {}
        for r in scene:
            for a in attrs:
                seen.setdefault(getattr(r, a), []).append(r.id)
        for value, owners in sorted(seen.items()):
            # an empty extent is already reported above
            if len(owners) > 1 and len(set(owners)) > 1:
                add(Violation(f"duplicate {axis} coordinate", tuple(sorted(set(owners)))))
    return report


def require_valid(scene: Scene) -> None:
    report = validate(scene)
    if not report.ok:
        raise SceneError(report)


def canonicalize(scene: Scene) -> Scene:
    """Replace coordinates by distinct integer ranks.

    Ties are broken by (value, rect id, role) with left before right and
    bottom before top, so the result is order-isomorphic to a symbolic
    perturbation of the input.
    """
    rects = scene.rects
    for r in rects:
        if not (r.x1 < r.x2 and r.y1 < r.y2):
            raise ValueError(f"rectangle {r.id} has an empty or inverted extent")
    xr = [[0, 0] for _ in rects]
    yr = [[0, 0] for _ in rects]
    for rank, (i, role) in enumerate(scene.x_order):
        xr[i][role] = rank
    for rank, (i, role) in enumerate(scene.y_order):
        yr[i][role] = rank
    zr = [0] * len(rects)
    for rank, i in enumerate(scene.z_order):
        zr[i] = rank
    return Scene(tuple(
        Rect(r.id, xr[i][0], xr[i][1], yr[i][0], yr[i][1], zr[i]) for i, r in enumerate(rects)
    ))


def make_scene(rows: Iterable[Sequence[float]]) -> Scene:
    """Build a scene from ``(id, x1, x2, y1, y2, z)`` rows."""
    return Scene(tuple(Rect(int(r[0]), *r[1:6]) for r in rows))
